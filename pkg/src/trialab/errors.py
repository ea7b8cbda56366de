class TrialabError(Exception):
    """Base class for input errors; the CLI maps these to exit code 2."""


class DimensionError(TrialabError, ValueError):
    pass


class KindError(TrialabError, ValueError):
    """An operation was asked of an algebra (or operator) kind it is not defined for."""


class PreconditionError(TrialabError, ValueError):
    """A hypothesis of a construction does not hold.  ``report`` carries the witnesses."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SchemaError(TrialabError, ValueError):
    pass
