"""Exception types shared across the package."""


class QueryBeyondCap(ValueError):
    """A coefficient was requested above the truncation degree of a series."""


class AlphabetMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


class ShapeMismatch(ValueError):
    pass


class UnboundGenerator(KeyError):
    pass


class OutOfGrid(ValueError):
    pass


class DenominatorVanished(ArithmeticError):
    pass


class Blowup(ArithmeticError):
    """The integrated state left the configured bound (finite-time escape)."""


class PreconditionFailed(ValueError):
    pass
