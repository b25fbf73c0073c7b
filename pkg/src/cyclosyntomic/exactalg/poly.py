"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Union

Scalar = Union[int, Fraction]

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def _strip(cs: list[Fraction]) -> tuple[Fraction, ...]:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Polynomial with Fraction coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple[Fraction, ...] = ()
    var: str = "q"

    def __post_init__(self):
        if self.var not in ("x", "q", "T"):
            raise ValueError(f"unknown variable tag {self.var!r}")
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in self.coeffs]))

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, var: str = "q") -> "Poly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1, var: str = "q") -> "Poly":
        return cls((0,) * k + (c,), var)

    # basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integral coefficients")
        return tuple(int(c) for c in self.coeffs)

    def render(self) -> str:
        """Canonical text form: coefficient list lowest first, e.g. ``[-1, 0, 1]``."""
        return "[" + ", ".join(_render_scalar(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"Poly({self.render()}, {self.var!r})"

    # arithmetic ------------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch {self.var} vs {other.var}")
            return other
        return Poly.const(other, self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self.coeff(i) + o.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly([c * a for a in self.coeffs], self.var)
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return Poly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1, self.var), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs) + 1
        if dq <= 0:
            return Poly((), self.var), self
        quot = [Fraction(0)] * dq
        inv = 1 / o.lead
        for k in range(dq - 1, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot, self.var), Poly(rem[: len(o.coeffs) - 1], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    # transformations ---------------------------------------------------------

    def __call__(self, value):
        """Horner evaluation at a scalar or composition with a polynomial."""
        acc = Poly((), value.var) if isinstance(value, Poly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def substitute_power(self, k: int) -> "Poly":
        """q -> q**k."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        out = [Fraction(0)] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly(out, self.var)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def taylor_at_one(self) -> tuple[Fraction, ...]:
        """Coefficients a_i with self = sum a_i (var - 1)**i."""
        n = len(self.coeffs)
        return tuple(sum((comb(j, i) * self.coeffs[j] for j in range(i, n)), Fraction(0)) for i in range(n))


def _render_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        a, b = b, a % b
    return a * (1 / a.lead) if not a.is_zero() else a


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant of two nonzero polynomials via the Euclidean recurrence."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    if b.degree == 0:
        return b.lead ** a.degree
    if a.degree < b.degree:
        sign = -1 if (a.degree * b.degree) % 2 else 1
        return sign * resultant(b, a)
    r = a % b
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    return sign * b.lead ** (a.degree - r.degree) * resultant(b, r)


def from_ints(cs: Iterable[int], var: str = "q") -> Poly:
    return Poly(tuple(cs), var)


def poly_invmod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo m over the rationals (extended Euclid)."""
    r0, r1 = m, a % m
    s0, s1 = Poly((), a.var), Poly.const(1, a.var)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ArithmeticError("polynomials are not coprime")
    return (s0 * (1 / r0.lead)) % m
