class HullError(Exception):
    """Base class for all seghull errors."""


class EmptyInput(HullError, ValueError):
    pass


class NonFiniteInput(HullError, ValueError):
    pass


class DegenerateInput(HullError, ValueError):
    pass


class InputTooLarge(HullError, ValueError):
    pass


class InternalError(HullError, RuntimeError):
    """Pipeline invariant broken; indicates a bug rather than bad input."""


class ParseError(HullError, ValueError):
    def __init__(self, message, line=None, offset=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class UnsupportedFormat(HullError, ValueError):
    pass
