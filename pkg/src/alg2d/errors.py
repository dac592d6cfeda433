"""Exception hierarchy shared by every module."""


class Alg2dError(Exception):
    """Base class for all errors raised by alg2d."""


class SpecMismatch(Alg2dError, ValueError):
    """Operands live over different fields."""


class DivisionByZero(Alg2dError, ZeroDivisionError):
    pass


class InfiniteField(Alg2dError, ValueError):
    """An operation needs a finite field but got Q or Q(sqrt d)."""


class CapExceeded(Alg2dError, ValueError):
    """A brute-force enumeration would exceed the configured field-size cap."""


class Singular(Alg2dError, ValueError):
    pass


class CharMismatch(Alg2dError, ValueError):
    """Field characteristic incompatible with the requested catalog class."""


class ArityError(Alg2dError, ValueError):
    pass


class ParseError(Alg2dError, ValueError):
    """Malformed text input; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at byte offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text
