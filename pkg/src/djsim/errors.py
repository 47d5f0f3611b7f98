"""Exception hierarchy shared by the simulator, algorithms and CLI."""


class DJSimError(Exception):
    """Base class for all package errors."""


class InputError(DJSimError, ValueError):
    """Malformed arguments: bad lengths, indices, arities, shot counts."""


class PromiseViolation(DJSimError, ValueError):
    """A function (or family) is outside the constant/balanced promise."""


class ConfigurationError(DJSimError, ValueError):
    """A noise model or noise file is incomplete or out of range."""


class ConsistencyError(DJSimError, RuntimeError):
    """A supposedly deterministic outcome probability is neither 0 nor 1."""
