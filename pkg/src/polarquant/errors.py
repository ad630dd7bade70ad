class PolarQuantError(Exception):
    """Base class for all package errors."""


class ParameterError(PolarQuantError, ValueError):
    pass


class ConfigError(PolarQuantError, ValueError):
    pass


class TableFormatError(PolarQuantError):
    """Raised when a lookup-table file cannot be loaded."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
