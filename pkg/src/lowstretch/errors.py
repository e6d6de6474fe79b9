"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called with arguments outside its contract."""


class DisconnectedError(ValueError):
    """An induced subgraph that must be connected is not."""


class InternalConsistencyError(RuntimeError):
    """A structural guarantee of the construction was violated (a bug)."""


class InvalidTreeError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
