"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`MorphClustError`. The ``exit_code`` attribute is what the CLI
returns when the error escapes a subcommand (2 for bad data, 3 for
algorithmic failures).
"""


class MorphClustError(Exception):
    exit_code = 3


class DataError(MorphClustError):
    exit_code = 2


class InvalidData(DataError, ValueError):
    pass


class ParseError(DataError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ShapeError(DataError, ValueError):
    pass


class EmptyGrid(DataError, ValueError):
    pass


class CellOutOfRange(DataError, IndexError):
    pass


class IoError(DataError, OSError):
    pass


class InvalidElement(MorphClustError, ValueError):
    pass


class NoComponents(MorphClustError, ValueError):
    pass


class InsufficientComponents(MorphClustError):
    """Fewer connected domains than requested clusters before any dilation."""


class InsufficientPoints(MorphClustError, ValueError):
    pass


class Unsupported(MorphClustError, ValueError):
    pass
