"""Polynomials in q over R and the component rings R[q]/Phi_e(q)^n.

Both types store an integer matrix ``num`` (rows: powers of q, columns:
powers of x) over one positive denominator.  All arithmetic happens over the
fraction field; integrality is a property checked afterwards through the
denominator's prime support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .. import _kernels as K
from ..errors import DenominatorNotAllowed, NotDivisible, NotInvertible, PrecisionShortfall
from .arith import euler_phi, offending_prime, prime_factors
from .cyclotomic import cyclotomic_coeffs
from .linalg import solve_rational
from .numberring import NumberRing, RElement
from .poly import Poly


def _normalize(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = gcd(den, *(int(v) for v in num.flat)) if num.size else den
    if g > 1:
        num = np.array([v // g for v in num.flat], dtype=object).reshape(num.shape)
        den //= g
    return num, den


def _as_object(rows: Sequence[Sequence[int]], width: int) -> np.ndarray:
    arr = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            arr[i, j] = int(v)
    return arr


def _scalar_parts(c) -> tuple[int, int]:
    c = Fraction(c)
    return c.numerator, c.denominator


class _Bivariate:
    """Shared storage and additive arithmetic."""

    __slots__ = ("ring", "num", "den")

    ring: NumberRing
    num: np.ndarray
    den: int

    def _new(self, num: np.ndarray, den: int):  # pragma: no cover - overridden
        raise NotImplementedError

    def _same_parent(self, other) -> bool:  # pragma: no cover - overridden
        raise NotImplementedError

    def _coerce(self, other):  # pragma: no cover - overridden
        raise NotImplementedError

    def is_zero(self) -> bool:
        return not any(self.num.flat)

    def _pad_rows(self, rows: int) -> np.ndarray:
        if self.num.shape[0] >= rows:
            return self.num
        pad = np.zeros((rows - self.num.shape[0], self.num.shape[1]), dtype=object)
        return np.concatenate([self.num, pad], axis=0)

    def __add__(self, other):
        o = self._coerce(other)
        rows = max(self.num.shape[0], o.num.shape[0])
        return self._new(self._pad_rows(rows) * o.den + o._pad_rows(rows) * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "_Bivariate":
        n, d = _scalar_parts(c)
        return self._new(self.num * n, self.den * d)

    def coefficient(self, i: int) -> RElement:
        """Coefficient of q**i as an element of R tensor Q."""
        if i >= self.num.shape[0]:
            return self.ring.zero
        return RElement(self.ring, tuple(int(v) for v in self.num[i]), self.den)

    def coefficients(self) -> list[RElement]:
        return [self.coefficient(i) for i in range(self.num.shape[0])]

    def denominator_support(self) -> frozenset[int]:
        return frozenset(prime_factors(self.den)) if self.den > 1 else frozenset()

    def check_denominators(self, allowed: Iterable[int] = (), context: str = ""):
        bad = offending_prime(self.den, tuple(self.ring.primes) + tuple(allowed))
        if bad is not None:
            raise DenominatorNotAllowed(bad, context)
        return self

    def rational_rows(self) -> list[list[str]]:
        """Rows of "num/den" strings; row i holds the x-coefficients of q**i."""
        return [[f"{_reduced(int(v), self.den)}" for v in row] for row in self.num]

    def render(self) -> str:
        """Coefficients in q, lowest first; each is a scalar (degree-one rings) or an x-list."""
        coeffs = self.coefficients()
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        return "[" + ", ".join(c.render() for c in coeffs) + "]"


def _reduced(n: int, d: int) -> str:
    g = gcd(n, d) or 1
    return f"{n // g}/{d // g}"


# ---------------------------------------------------------------------------


class RPoly(_Bivariate):
    """Polynomial in q with coefficients in R tensor Q (no reduction in q)."""

    __slots__ = ()

    def __init__(self, ring: NumberRing, num: np.ndarray, den: int = 1):
        num = np.asarray(num, dtype=object)
        if num.ndim != 2 or num.shape[1] != ring.degree:
            raise ValueError("numerator must have shape (rows, ring.degree)")
        if num.shape[0] == 0:
            num = np.zeros((1, ring.degree), dtype=object)
        # trim trailing zero rows but keep at least one
        last = num.shape[0]
        while last > 1 and not any(num[last - 1]):
            last -= 1
        num, den = _normalize(num[:last], int(den))
        self.ring, self.num, self.den = ring, num, den

    # constructors ------------------------------------------------------------

    @classmethod
    def from_poly(cls, ring: NumberRing, p: Poly) -> "RPoly":
        """Polynomial in q with rational coefficients."""
        if p.var != "q":
            raise ValueError("expected a polynomial in q")
        den = 1
        for c in p.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        rows = [[int(c * den)] for c in p.coeffs] or [[0]]
        return cls(ring, _as_object(rows, ring.degree), den)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[RElement]) -> "RPoly":
        ring = coeffs[0].ring
        den = 1
        for c in coeffs:
            den = den * c.den // gcd(den, c.den)
        rows = [[v * (den // c.den) for v in c.num] for c in coeffs]
        return cls(ring, _as_object(rows, ring.degree), den)

    @classmethod
    def constant(cls, ring: NumberRing, c) -> "RPoly":
        if not isinstance(c, RElement):
            c = ring.const(c)
        return cls.from_coefficients([c])

    @classmethod
    def monomial(cls, ring: NumberRing, k: int, c=1) -> "RPoly":
        if not isinstance(c, RElement):
            c = ring.const(c)
        return cls.from_coefficients([ring.zero] * k + [c])

    # structure ---------------------------------------------------------------

    def _new(self, num, den):
        return RPoly(self.ring, num, den)

    def _coerce(self, other):
        if isinstance(other, RPoly):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, Poly):
            return RPoly.from_poly(self.ring, other)
        return RPoly.constant(self.ring, other)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else self.num.shape[0] - 1

    def __eq__(self, other):
        if not isinstance(other, RPoly):
            return NotImplemented
        return self.ring == other.ring and self.den == other.den and self.num.shape == other.num.shape and bool(
            np.all(self.num == other.num)
        )

    __hash__ = None

    def __repr__(self):
        return f"RPoly({self.render()})"

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        prod = K.mulmod(self.num, o.num, _xred(self.ring))
        return RPoly(self.ring, prod, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = RPoly.constant(self.ring, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute_power(self, k: int) -> "RPoly":
        """q -> q**k."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        rows = self.num.shape[0]
        out = np.zeros(((rows - 1) * k + 1, self.ring.degree), dtype=object)
        out[::k] = self.num
        return RPoly(self.ring, out, self.den)

    def divmod_monic(self, modulus: Sequence[int]) -> tuple["RPoly", "RPoly"]:
        """Division with remainder by a monic integer polynomial in q."""
        n = len(modulus) - 1
        rem = [list(row) for row in self.num]
        rows = len(rem)
        if rows <= n:
            return RPoly.constant(self.ring, 0), self
        quot = [[0] * self.ring.degree for _ in range(rows - n)]
        for k in range(rows - 1, n - 1, -1):
            c = rem[k]
            if any(c):
                quot[k - n] = list(c)
                for j in range(n + 1):
                    mj = modulus[j]
                    if mj:
                        rem[k - n + j] = [u - mj * v for u, v in zip(rem[k - n + j], c)]
        return (
            RPoly(self.ring, _as_object(quot, self.ring.degree), self.den),
            RPoly(self.ring, _as_object(rem[:n] or [[0] * self.ring.degree], self.ring.degree), self.den),
        )

    def reduce(self, e: int, n: int = 1) -> "ComponentElement":
        return ComponentElement.from_rpoly(self, e, n)


# ---------------------------------------------------------------------------


def _xred(ring: NumberRing) -> K.Reducer:
    return ring.xreducer


def _qred(e: int, n: int, length: int) -> K.Reducer:
    size = n * euler_phi(e)
    # round the span up so the cache sees few distinct lengths
    span = max(length, 2 * size - 1)
    span = 1 << (span - 1).bit_length()
    return K.reducer(cyclotomic_coeffs(e, n), span)


class ComponentElement(_Bivariate):
    """Element of R[q]/Phi_e(q)^n (tensored with Q), reduced representative."""

    __slots__ = ("e", "n")

    def __init__(self, ring: NumberRing, e: int, n: int, num: np.ndarray, den: int = 1):
        if e < 1 or n < 1:
            raise ValueError("conductor and exponent must be positive")
        size = n * euler_phi(e)
        num = np.asarray(num, dtype=object)
        if num.shape != (size, ring.degree):
            raise ValueError(f"numerator shape {num.shape} != {(size, ring.degree)}")
        num, den = _normalize(num, int(den))
        self.ring, self.e, self.n, self.num, self.den = ring, e, n, num, den

    @property
    def size(self) -> int:
        return self.n * euler_phi(self.e)

    # constructors ------------------------------------------------------------

    @classmethod
    def from_rpoly(cls, p: RPoly, e: int, n: int = 1) -> "ComponentElement":
        size = n * euler_phi(e)
        rows = p.num.shape[0]
        if rows <= size:
            num = p._pad_rows(size)
        else:
            num = K.reduce(p.num, _xred(p.ring), _qred(e, n, rows))
        return cls(p.ring, e, n, num, p.den)

    @classmethod
    def const(cls, ring: NumberRing, e: int, n: int, c=1) -> "ComponentElement":
        return cls.from_rpoly(RPoly.constant(ring, c), e, n)

    @classmethod
    def from_poly(cls, ring: NumberRing, p: Poly, e: int, n: int = 1) -> "ComponentElement":
        return cls.from_rpoly(RPoly.from_poly(ring, p), e, n)

    @classmethod
    def zero(cls, ring: NumberRing, e: int, n: int = 1) -> "ComponentElement":
        return cls(ring, e, n, np.zeros((n * euler_phi(e), ring.degree), dtype=object), 1)

    # structure ---------------------------------------------------------------

    def _new(self, num, den):
        return ComponentElement(self.ring, self.e, self.n, num, den)

    def _coerce(self, other):
        if isinstance(other, ComponentElement):
            if (other.ring, other.e, other.n) != (self.ring, self.e, self.n):
                raise ValueError(
                    f"component mismatch: (e={self.e}, n={self.n}) vs (e={other.e}, n={other.n})"
                )
            return other
        if isinstance(other, RPoly):
            return other.reduce(self.e, self.n)
        if isinstance(other, Poly):
            return ComponentElement.from_poly(self.ring, other, self.e, self.n)
        return ComponentElement.const(self.ring, self.e, self.n, other)

    def __eq__(self, other):
        if isinstance(other, ComponentElement):
            return (
                (self.ring, self.e, self.n) == (other.ring, other.e, other.n)
                and self.den == other.den
                and bool(np.all(self.num == other.num))
            )
        if isinstance(other, (int, Fraction, RElement, Poly, RPoly)):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"ComponentElement(e={self.e}, n={self.n}, {self.render()})"

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        prod = K.mulmod(self.num, o.num, _xred(self.ring), _qred(self.e, self.n, 2 * self.size - 1))
        return ComponentElement(self.ring, self.e, self.n, prod, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return component_invert(self, _all_primes_marker) ** (-k)
        out, base = ComponentElement.const(self.ring, self.e, self.n, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def lift(self) -> RPoly:
        """Reduced representative as a polynomial in q."""
        return RPoly(self.ring, self.num, self.den)

    def reduce_exponent(self, n: int) -> "ComponentElement":
        if n > self.n:
            raise PrecisionShortfall(f"cannot raise exponent {self.n} to {n} at e={self.e}")
        if n == self.n:
            return self
        return ComponentElement.from_rpoly(self.lift(), self.e, n)

    def substitute(self, k: int, e: int, n: int) -> "ComponentElement":
        """Image under q -> q**k in R[q]/Phi_e(q)^n.

        Well defined when zeta_e**k has order self.e (so Phi_e divides
        Phi_{self.e}(q**k)) and n <= self.n.
        """
        if e // gcd(e, k) != self.e:
            raise ValueError(f"q -> q^{k} does not map Phi_{self.e} into the ideal of Phi_{e}")
        if n > self.n:
            raise PrecisionShortfall(f"need exponent {n} at e={e} but source has {self.n} at e={self.e}")
        return ComponentElement.from_rpoly(self.lift().substitute_power(k), e, n)

    def is_divisible_by_phi(self) -> bool:
        return self.reduce_exponent(1).is_zero()

    def divide_by_phi(self) -> "ComponentElement":
        """x / Phi_e as an element of exponent n-1; requires exact divisibility."""
        if self.n < 2:
            raise ValueError("dividing by Phi_e needs exponent at least 2")
        quot, rem = self.lift().divmod_monic(cyclotomic_coeffs(self.e))
        if not rem.is_zero():
            raise NotDivisible(self.e, f"Phi_{self.e}")
        return ComponentElement.from_rpoly(quot, self.e, self.n - 1)

    def multiply_by_phi(self, n: int | None = None) -> "ComponentElement":
        """Phi_e * x as an element of exponent ``n`` (default self.n + 1)."""
        n = self.n + 1 if n is None else n
        if n > self.n + 1:
            raise PrecisionShortfall("multiplying by Phi_e gains exactly one exponent")
        phi = RPoly.from_poly(self.ring, Poly(cyclotomic_coeffs(self.e)))
        return ComponentElement.from_rpoly(self.lift() * phi, self.e, n)

    def is_constant(self) -> bool:
        return not any(self.num[1:].flat)


class _AllPrimes:
    """Sentinel: allow every denominator (pure fraction-field arithmetic)."""


_all_primes_marker = _AllPrimes()


def _inverse_exponent_one(a: ComponentElement) -> ComponentElement:
    size, deg = euler_phi(a.e), a.ring.degree
    a1 = a.reduce_exponent(1)
    columns = []
    for i in range(size):
        for j in range(deg):
            basis = np.zeros((size, deg), dtype=object)
            basis[i, j] = 1
            prod = a1 * ComponentElement(a.ring, a.e, 1, basis, 1)
            columns.append([int(v) for v in prod.num.flat])  # scaled by a1.den
    dim = size * deg
    matrix = [[columns[c][r] for c in range(dim)] for r in range(dim)]
    rhs = [1] + [0] * (dim - 1)
    sol = solve_rational(matrix, rhs)
    if sol is None:
        raise NotInvertible(f"zero divisor modulo Phi_{a.e}")
    den = 1
    for c in sol:
        den = den * c.denominator // gcd(den, c.denominator)
    num = np.array([int(c * den) * a1.den for c in sol], dtype=object).reshape(size, deg)
    return ComponentElement(a.ring, a.e, 1, num, den)


def component_invert(a: ComponentElement, allowed=()) -> ComponentElement:
    """Inverse in R[q]/Phi_e^n: exponent-one inverse, then Newton lifting.

    ``allowed`` lists primes (besides those of N) that may appear in the
    denominator of the result.
    """
    b1 = _inverse_exponent_one(a)
    b = ComponentElement.from_rpoly(b1.lift(), a.e, a.n)
    prec = 1
    while prec < a.n:
        b = b * (2 - a * b)
        prec *= 2
    if a * b != 1:  # pragma: no cover - guaranteed by Newton iteration
        raise ArithmeticError("Newton lifting failed")
    if not isinstance(allowed, _AllPrimes):
        b.check_denominators(allowed, f"inverse at e={a.e}")
    return b


def exact_divide(a: ComponentElement, b: ComponentElement, allowed=()) -> ComponentElement:
    """a / b with the same denominator discipline as :func:`component_invert`."""
    out = a * component_invert(b, _all_primes_marker)
    if not isinstance(allowed, _AllPrimes):
        out.check_denominators(allowed, f"quotient at e={a.e}")
    return out


ANY_PRIME = _all_primes_marker
