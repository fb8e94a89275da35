"""Exception hierarchy shared by all qdslab modules."""


class QdsError(Exception):
    """Base class for every error raised by qdslab."""


class InputError(QdsError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class CapError(QdsError):
    """A configured resource cap was hit (CLI exit code 3)."""


class NonGroupTable(InputError):
    pass


class ElementOutOfRange(InputError):
    pass


class NotCyclic(InputError):
    pass


class NotAbelian(InputError):
    pass


class NotAQds(InputError):
    pass


class EmptyDelta(InputError):
    pass


class DuplicateLine(InputError):
    pass


class BadCoordinates(InputError):
    pass


class NoProvenance(InputError):
    pass


class BadProvenance(InputError):
    pass


class NotPls(InputError):
    pass


class NotGroupAutomorphism(InputError):
    pass


class LabelMapUnavailable(InputError):
    pass


class UnknownFormat(InputError):
    pass


class ParseError(InputError):
    pass


class OrderCapExceeded(CapError):
    pass


class SearchCapExceeded(CapError):
    pass


class SearchBudgetExceeded(CapError):
    pass
