"""Exception types raised by nyqshape."""


class NyqshapeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(NyqshapeError, ValueError):
    pass


class FamilyNotNyquist(NyqshapeError, ValueError):
    pass


class InvalidSpec(NyqshapeError, ValueError):
    pass


class NumericalAsymmetry(NyqshapeError, ArithmeticError):
    """The inverse transform produced a result that is not real and symmetric."""


class DegenerateFilter(NyqshapeError, ArithmeticError):
    pass


class InvalidRange(NyqshapeError, ValueError):
    pass


class GridTooCoarse(NyqshapeError, ValueError):
    pass


class InvalidArg(NyqshapeError, ValueError):
    pass


class ParityViolation(NyqshapeError, ValueError):
    pass
