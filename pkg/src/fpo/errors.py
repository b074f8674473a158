"""Exception types shared across the package."""


class FpoError(Exception):
    """Base class for all library errors."""


class ParseError(FpoError):
    """Malformed input file (bad line, short record)."""


class ValidationError(FpoError):
    """Data violates a structural invariant (non-finite coords, bad shapes)."""


class ConfigError(FpoError):
    """Invalid configuration or generator parameters."""


class DomainError(FpoError):
    """Operation precondition violated (e.g. sampling more points than exist)."""


class ContractViolation(FpoError):
    """A cross-module contract was broken (e.g. gather index outside its search space)."""
