"""Exception hierarchy shared by every module of the package."""


class MobiusError(Exception):
    """Base class for all errors raised by this package."""


class CycleError(MobiusError, ValueError):
    pass


class UnknownElement(MobiusError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ""


class NotComparable(MobiusError, ValueError):
    pass


class SizeCap(MobiusError, ValueError):
    pass


class PosetMismatch(MobiusError, ValueError):
    pass


class FieldMismatch(MobiusError, ValueError):
    pass


class ShapeMismatch(MobiusError, ValueError):
    pass


class NotAComplex(MobiusError, ValueError):
    pass


class NotASpread(MobiusError, ValueError):
    pass


class FunctorialityError(MobiusError, ValueError):
    pass


class NotMonotone(MobiusError, ValueError):
    pass


class InconsistentSystem(MobiusError, ValueError):
    pass


class ParseError(MobiusError, ValueError):
    pass


class NotAConnection(MobiusError, ValueError):
    pass
