"""Exceptions raised by the toolkit. The CLI maps each class to an exit code."""


class ToolkitError(ValueError):
    """Base class for every error the toolkit raises on purpose"""


class DimensionMismatchError(ToolkitError):
    pass


class AlphabetMismatchError(ToolkitError):
    pass


class EmptyBaseError(ToolkitError):
    pass


class DisjointnessError(ToolkitError):
    """Two configurations are nonzero at the same cell"""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class PeriodTooSmallError(ToolkitError):
    pass


class BackgroundInstabilityError(ToolkitError):
    """Symbol 0 is not quiescent, so a finite configuration would not stay finite"""


class GuardExceededError(ToolkitError):
    pass


class UnknownFixtureError(ToolkitError):
    pass


class UnsupportedConfigurationError(ToolkitError):
    pass


class ParseError(ToolkitError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
