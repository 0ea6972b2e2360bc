from typing import Optional


class GroupCertError(Exception):
    """Base class for every user-facing error raised by the certifier."""


class WordSyntaxError(GroupCertError):
    """Malformed word text; `position` is the 0-based column of the bad atom."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGeneratorError(GroupCertError):
    def __init__(self, name: str, position: Optional[int] = None):
        where = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown generator {name}{where}")
        self.name = name
        self.position = position


class PresentationError(GroupCertError):
    pass


class EliminationError(PresentationError):
    pass


class CoxeterModelError(GroupCertError):
    pass


class RepresentationError(GroupCertError):
    """A constructed representation failed its own relator or inverse check."""


class GroupExprError(GroupCertError):
    pass


class UnsupportedRowError(GroupCertError):
    pass
