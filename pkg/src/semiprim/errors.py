"""Exception types raised across the package."""

from __future__ import annotations


class SemiprimError(Exception):
    """Base class for all library errors."""


class MalformedCycle(SemiprimError, ValueError):
    pass


class PointOutOfRange(SemiprimError, ValueError):
    def __init__(self, point: int, degree: int):
        super().__init__(f"point {point} out of range for degree {degree}")
        self.point = point
        self.degree = degree


class RepeatedPoint(SemiprimError, ValueError):
    def __init__(self, point: int):
        super().__init__(f"point {point} repeated")
        self.point = point


class CapacityExceeded(SemiprimError):
    """A computation would exceed a configured cap."""

    def __init__(self, needed: int, cap: int, what: str = "size"):
        super().__init__(f"{what} {needed} exceeds cap {cap}")
        self.needed = needed
        self.cap = cap
        self.what = what


class NotTransitive(SemiprimError):
    pass


class MismatchedParent(SemiprimError):
    pass


class NotAHomomorphism(SemiprimError):
    pass


class NotCoreFree(SemiprimError):
    def __init__(self, core):
        super().__init__(f"stabilizer has a core of order {core.order()}")
        self.core = core


class NotNormal(SemiprimError):
    pass


class NotPrime(SemiprimError, ValueError):
    pass


class NormalButTransitive(SemiprimError):
    pass


class NotSemiprimitive(SemiprimError):
    def __init__(self, witness=None):
        super().__init__("action is not semiprimitive")
        self.witness = witness


class NotInnatelyTransitive(SemiprimError):
    pass


class InvalidTriple(SemiprimError):
    def __init__(self, condition: int, witness=None, reason: str = ""):
        super().__init__(f"condition ({condition}) fails: {reason}")
        self.condition = condition
        self.witness = witness
        self.reason = reason


class IncompatibleIsomorphism(SemiprimError):
    pass


class NotADirectDecomposition(SemiprimError):
    pass


class BadModule(SemiprimError):
    pass


class NotAnAutomorphism(SemiprimError):
    pass


class NotApplicable(SemiprimError):
    pass


class ParseError(SemiprimError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
