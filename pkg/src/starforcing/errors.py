"""Exception hierarchy shared by every layer of the package."""


class StarForcingError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StarForcingError, ValueError):
    """Malformed user input: bad literals, unknown identifiers, bad files."""


class DSLSyntaxError(InputError):
    """A text literal could not be parsed."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text[:position]}<HERE>{text[position:]}"
        super().__init__(message)


class AlgebraMismatchError(InputError):
    """Elements from different Boolean algebras were combined."""


class BoundsError(StarForcingError):
    """A configured size bound (rank cap, stratum cap, formula cap) was exceeded."""
