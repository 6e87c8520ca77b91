"""Exception types shared across the package."""


class FrechetError(Exception):
    """Base class for all errors raised by packfrechet."""


class UsageError(FrechetError, ValueError):
    """Invalid arguments, e.g. mismatched dimensions or bad parameters."""


class DomainError(UsageError):
    """A curve parameter lies outside the curve's domain."""


class ParseError(FrechetError):
    """A curve file could not be read."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


class ContractError(FrechetError):
    """A caller-side guarantee was violated (e.g. an over-estimate that is too small)."""
