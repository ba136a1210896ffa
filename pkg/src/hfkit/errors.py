"""Exception types shared across the package."""


class HfKitError(Exception):
    """Base class for all errors raised by hfkit."""


class SizeExceeded(HfKitError, ValueError):
    """A brute-force operation was asked to work beyond its configured bound."""


class HfParseError(HfKitError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class NotAnOrdinal(HfKitError, ValueError):
    pass


class NotATuple(HfKitError, ValueError):
    pass


class ArityMismatch(HfKitError, ValueError):
    pass


class InvalidShape(HfKitError, ValueError):
    pass


class WindowUnstable(HfKitError, ValueError):
    """A windowed computation could not certify its answer inside the window."""


class Overflow(HfKitError, ArithmeticError):
    pass


class SignatureError(HfKitError, ValueError):
    pass


class TermParseError(HfKitError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownToken(TermParseError):
    pass


class ArityUnderflow(TermParseError):
    pass


class TrailingTokens(TermParseError):
    pass


class UnknownTheorem(HfKitError, KeyError):
    pass
