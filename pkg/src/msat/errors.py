"""Exception hierarchy shared by all msat modules."""


class MsatError(Exception):
    """Base class for every error raised by msat."""


class UnknownSymbol(MsatError):
    pass


class SortMismatch(MsatError):
    def __init__(self, message, slot=None, expected=None, found=None):
        super().__init__(message)
        self.slot = slot
        self.expected = expected
        self.found = found


class UnboundVariable(MsatError):
    pass


class MissingAssignment(MsatError):
    pass


class UnsupportedDoctrine(MsatError):
    """A guaranteed-canonical form was requested from a doctrine without one."""


class InvalidParameter(MsatError):
    pass


class ObjectMismatch(MsatError):
    pass


class SourceMismatch(MsatError):
    pass


class IndexOutOfRange(MsatError):
    pass


class ElementNotInCarrier(MsatError):
    pass


class DoctrineMismatch(MsatError):
    pass


class NotFunctorial(MsatError):
    pass


class HomEnumerationIncomplete(MsatError):
    """Attaching data could not be enumerated exactly and no approximation was requested."""


class BudgetExhausted(MsatError):
    """Iteration budget ran out; carries the trace accumulated so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class ParseError(MsatError):
    """Syntax or semantic error in a text input, with a source position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
