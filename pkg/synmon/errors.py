"""Exceptions raised by synmon, each carrying the CLI exit code it maps to."""
from typing import Any, List, Optional


class SynmonError(Exception):
    """Base error; `detail` is the user-facing message."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class RegexSyntaxError(SynmonError):
    exit_code = 2

    def __init__(self, detail: str, position: int):
        super().__init__(f"{detail} at position {position}")
        self.position = position


class AlphabetError(SynmonError):
    exit_code = 2


class FreeElemError(SynmonError):
    exit_code = 2


class VarietyError(SynmonError):
    exit_code = 2


class DfaFormatError(SynmonError):
    exit_code = 2


class CapacityError(SynmonError):
    """A finite construction outgrew its configured guard."""

    exit_code = 3

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} exceeded capacity guard: {size} > {limit}")
        self.size = size
        self.limit = limit


class AtomAmbiguityError(SynmonError):
    exit_code = 1


class DualityViolation(SynmonError):
    exit_code = 1

    def __init__(self, detail: str, witnesses: Optional[List[Any]] = None):
        super().__init__(detail)
        self.witnesses = witnesses or []
