"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CyclosyntomicError(Exception):
    """Base class for all library errors."""


class NotInvertible(CyclosyntomicError):
    """The element is a zero divisor of the component ring."""


class DenominatorNotAllowed(CyclosyntomicError):
    def __init__(self, prime: int, context: str = ""):
        self.prime = prime
        msg = f"result needs the prime {prime} inverted"
        super().__init__(f"{msg} ({context})" if context else msg)


class NonEtaleAtP(CyclosyntomicError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"defining polynomial is not separable modulo {p}")


class NotInImage(CyclosyntomicError):
    def __init__(self, e: int, detail: str = ""):
        self.e = e
        super().__init__(f"not in the image at index {e}" + (f": {detail}" if detail else ""))


class LevelMismatch(CyclosyntomicError):
    pass


class PrecisionShortfall(CyclosyntomicError):
    pass


class NotCongruentToOne(CyclosyntomicError):
    def __init__(self, e: int):
        self.e = e
        super().__init__(f"component {e} is not congruent to 1 modulo its cyclotomic factor")


class NotDivisible(CyclosyntomicError):
    def __init__(self, e: int, detail: str = ""):
        self.e = e
        super().__init__(f"component {e} is not divisible" + (f" by {detail}" if detail else ""))


class WellDefinednessViolation(CyclosyntomicError):
    def __init__(self, e: int):
        self.e = e
        super().__init__(f"norm and Frobenius disagree modulo the cyclotomic factor at e={e}")


class RootUnavailable(CyclosyntomicError):
    def __init__(self, e: int, order: int):
        self.e = e
        self.order = order
        super().__init__(f"no {e}-th root of a root of unity of order {order}")


class ConfigError(CyclosyntomicError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = (", ".join(where) + ": ") if where else ""
        super().__init__(prefix + message)
