"""Boolean functions as truth tables, promise classification, oracle gates."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import InputError
from .sim import MAX_QUBITS, Gate

# C(2^n, 2^(n-1)) balanced functions; n=4 gives 12870, n=5 would give ~6e8.
MAX_BALANCED_ENUMERATION_ARITY = 4


class PromiseClass(enum.Enum):
    CONSTANT = "Constant"
    BALANCED = "Balanced"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BooleanFunction:
    """f: {0,1}^arity -> {0,1} with ``table[x] == f(x)``.

    The input ``x`` is read as an unsigned integer whose most significant
    bit is the first input wire.
    """

    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 1:
            raise InputError(f"arity must be a positive integer, got {self.arity!r}")
        if self.arity >= MAX_QUBITS:
            raise InputError(f"arity {self.arity} leaves no room for an output qubit")
        table = tuple(int(b) for b in self.table)
        if len(table) != 1 << self.arity:
            raise InputError(f"table of length {len(table)} for arity {self.arity}")
        if any(b not in (0, 1) for b in table):
            raise InputError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_string(cls, text: str) -> "BooleanFunction":
        """Parse a table such as ``"0110"``; character ``x`` is f(x)."""
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise InputError(f"truth table must be a non-empty string of 0/1, got {text!r}")
        n = len(text).bit_length() - 1
        if len(text) != 1 << n or n < 1:
            raise InputError(f"truth table length {len(text)} is not a power of two >= 2")
        return cls(n, tuple(int(c) for c in text))

    @classmethod
    def constant(cls, arity: int, value: int) -> "BooleanFunction":
        return cls(arity, (value,) * (1 << arity))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __str__(self) -> str:
        return "".join(map(str, self.table))

    @property
    def ones(self) -> int:
        return sum(self.table)


def classify(f: BooleanFunction) -> PromiseClass:
    ones = f.ones
    if ones in (0, len(f.table)):
        return PromiseClass.CONSTANT
    if 2 * ones == len(f.table):
        return PromiseClass.BALANCED
    return PromiseClass.NEITHER


@dataclass(frozen=True)
class FunctionFamily:
    """Functions sharing a declared promise (all constant or all balanced)."""

    functions: tuple[BooleanFunction, ...]
    promise: PromiseClass | None = None

    def __post_init__(self) -> None:
        funcs = tuple(self.functions)
        if not funcs:
            raise InputError("function family is empty")
        object.__setattr__(self, "functions", funcs)

    @classmethod
    def from_strings(cls, tables: Sequence[str]) -> "FunctionFamily":
        return cls(tuple(BooleanFunction.from_string(t) for t in tables))

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, i: int) -> BooleanFunction:
        return self.functions[i]


def build_uf(f: BooleanFunction, inputs: Sequence[int] | None = None,
             output: int | None = None, query: int | None = None) -> Gate:
    """|x>|y> -> |x>|y xor f(x)>; defaults to inputs 0..n-1 and output n."""
    if inputs is None:
        inputs = range(f.arity)
    if output is None:
        output = f.arity
    inputs = tuple(inputs)
    if len(inputs) != f.arity:
        raise InputError(f"{len(inputs)} input qubits for an arity-{f.arity} function")
    return Gate("PermutationOracle", (*inputs, output), function=f, query=query)


def build_controlled_uf(f: BooleanFunction, control: int, target: int,
                        query: int | None = None) -> Gate:
    """|c>|a> -> |c>|a xor f(c)> for a one-bit function."""
    if f.arity != 1:
        raise InputError(f"controlled oracle needs an arity-1 function, got arity {f.arity}")
    return Gate("ControlledBitOracle", (control, target), function=f, query=query)


def enumerate_promise_functions(n: int, cls: PromiseClass) -> list[BooleanFunction]:
    if n < 1:
        raise InputError(f"arity must be >= 1, got {n}")
    if cls is PromiseClass.CONSTANT:
        if n >= MAX_QUBITS:
            raise InputError(f"arity {n} exceeds the simulator limit")
        return [BooleanFunction.constant(n, v) for v in (0, 1)]
    if cls is PromiseClass.BALANCED:
        if n > MAX_BALANCED_ENUMERATION_ARITY:
            size = comb(1 << n, 1 << (n - 1))
            raise InputError(f"refusing to enumerate {size} balanced functions of arity {n}")
        size = 1 << n
        out = []
        for ones in itertools.combinations(range(size), size // 2):
            table = [0] * size
            for i in ones:
                table[i] = 1
            out.append(BooleanFunction(n, tuple(table)))
        return out
    raise InputError(f"can only enumerate Constant or Balanced functions, not {cls}")
