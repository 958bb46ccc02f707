"""Exception hierarchy. Every library fault derives from MaxLenQMError."""


class MaxLenQMError(Exception):
    pass


class ConfigError(MaxLenQMError, ValueError):
    pass


class DomainError(MaxLenQMError, ValueError):
    pass


class ChartBoundaryError(DomainError):
    pass


class AxisSingularityError(DomainError):
    pass


class NonFiniteError(MaxLenQMError, ArithmeticError):
    pass


class ZeroNormError(MaxLenQMError, ArithmeticError):
    pass


class NotNormalizedError(MaxLenQMError, ValueError):
    pass


class DivergentMomentError(MaxLenQMError, ArithmeticError):
    def __init__(self, message, moment=None, values=None):
        super().__init__(message)
        self.moment = moment
        self.values = values


class UnknownStateError(MaxLenQMError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ClosedFormUnavailableError(MaxLenQMError, NotImplementedError):
    pass
