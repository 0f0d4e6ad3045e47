"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates a documented precondition or invariant."""


class ParseError(ContractError):
    """Malformed edge-list text; carries the offending line number."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ResourceError(RuntimeError):
    """A configured size or memory cap would be exceeded."""
