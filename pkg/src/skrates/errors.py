"""Exception hierarchy.

SourceFormatError: bad input text (CLI exit code 2).
DomainError: valid text, invalid request (non-PIN packing, cap exceeded, ...; exit 1).
ConsistencyError: two independent code paths disagreed; always a bug, never user error.
"""


class SkratesError(Exception):
    pass


class SourceFormatError(SkratesError):
    pass


class DomainError(SkratesError):
    pass


class ConsistencyError(SkratesError):
    pass
