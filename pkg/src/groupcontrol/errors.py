"""Exception hierarchy shared by the library and the CLI."""


class GroupControlError(Exception):
    """Base class for all errors raised by groupcontrol."""


class InputError(GroupControlError, ValueError):
    """Malformed or out-of-range input (indices, subsets, quotas, sources)."""


class ParseError(InputError):
    """Text-format parse failure with a 1-based line/column position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class StrategyError(GroupControlError):
    """An explicitly requested solver does not apply to the instance."""


class ResourceLimitError(GroupControlError):
    """An exhaustive search would exceed a configured size limit."""

    def __init__(self, limit_name, limit, actual):
        self.limit_name = limit_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{limit_name}={limit} exceeded (needed {actual})")
