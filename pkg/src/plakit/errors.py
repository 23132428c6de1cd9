"""Exception types shared across the toolkit."""


class PlakitError(Exception):
    """Base class for all toolkit errors."""


class FormatError(PlakitError):
    """A text artifact (equation file, fuse map, .pla, KISS2, vectors) is malformed."""


class ParseError(FormatError):
    """Expression syntax error, carrying the byte offset of the offending token."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class CapacityError(PlakitError):
    """A design does not fit the target device on one axis.

    `axis` is one of "inputs", "terms", "outputs"; `needed` and `available`
    are exact counts, never estimates.
    """

    def __init__(self, axis, needed, available):
        super().__init__(
            f"design needs {needed} {axis} but device provides {available}"
        )
        self.axis = axis
        self.needed = needed
        self.available = available
