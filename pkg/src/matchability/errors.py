"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad sizes, ranges, file contents)."""


class DomainError(ValueError):
    """Parameters outside the mathematical domain of a formula."""


class ResourceError(RuntimeError):
    """A computation exceeded its enumeration or retry budget."""
