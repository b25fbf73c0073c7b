"""Monogenic etale number rings Z[x]/(f)[1/N], their elements and Frobenius lifts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from .._kernels import reducer
from ..errors import DenominatorNotAllowed, NonEtaleAtP, NotInvertible
from .arith import offending_prime, prime_factors, strip_primes, valuation
from .cyclotomic import cyclotomic_coeffs
from .linalg import solve_mod_prime, solve_rational
from .poly import Poly, resultant


@dataclass(frozen=True)
class NumberRing:
    """R = Z[x]/(f) with the integer N inverted.

    ``f`` is a monic integer polynomial given lowest degree first.  The
    constructor rejects presentations whose discriminant has a prime factor
    outside N, so R is etale over Z[1/N].
    """

    f: tuple[int, ...]
    N: int = 1
    label: str = field(default="", compare=False)

    def __post_init__(self):
        f = tuple(int(c) for c in self.f)
        object.__setattr__(self, "f", f)
        if len(f) < 2 or f[-1] != 1:
            raise ValueError(f"defining polynomial must be monic of degree >= 1, got {list(f)}")
        if self.N < 1:
            raise ValueError(f"inverted integer must be positive, got {self.N}")
        disc = self.discriminant
        if disc == 0 or strip_primes(disc, self.primes) != 1:
            raise ValueError(
                f"discriminant {disc} of {list(f)} has primes outside N={self.N}; ring is not etale"
            )

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return prime_factors(self.N) if self.N > 1 else ()

    @cached_property
    def discriminant(self) -> int:
        fp = Poly(self.f, "x")
        n = self.degree
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return int(sign * resultant(fp, fp.derivative()))

    @cached_property
    def xreducer(self):
        return reducer(self.f, 2 * self.degree - 1)

    def name(self) -> str:
        return self.label or f"Z[x]/({Poly(self.f, 'x').render()})[1/{self.N}]"

    # elements --------------------------------------------------------------

    def element(self, coeffs: Iterable, check: bool = True) -> "RElement":
        """Element from rational x-coefficients (lowest first); longer inputs are reduced mod f."""
        el = RElement.from_rationals(self, list(coeffs))
        if check and not el.is_integral():
            raise DenominatorNotAllowed(offending_prime(el.den, self.primes), "ring element")
        return el

    def const(self, c) -> "RElement":
        return RElement.from_rationals(self, [c])

    @cached_property
    def one(self) -> "RElement":
        return self.const(1)

    @cached_property
    def zero(self) -> "RElement":
        return self.const(0)

    @cached_property
    def gen(self) -> "RElement":
        return RElement.from_rationals(self, [0, 1])

    def frobenius_lift(self, p: int, r: int) -> "FrobeniusLift":
        return frobenius_lift(self, p, r)


def integers() -> NumberRing:
    return NumberRing((0, 1), 1, "Z")


def gaussian_integers() -> NumberRing:
    """Z[i][1/2]."""
    return NumberRing((1, 0, 1), 2, "Z[i][1/2]")


def cyclotomic_integers(g: int) -> NumberRing:
    """Z[zeta_g][1/g], presented by Phi_g(x)."""
    return NumberRing(cyclotomic_coeffs(g), g, f"Z[zeta_{g}][1/{g}]")


# ---------------------------------------------------------------------------


def _mul_mod_f(a: Sequence[int], b: Sequence[int], f: Sequence[int], modulus: int | None = None) -> list[int]:
    """Product in Z[x]/(f) (optionally also modulo an integer)."""
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                prod[i + j] += u * v
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(n):
                prod[k - n + j] -= c * f[j]
    out = prod[:n] + [0] * (n - len(prod[:n]))
    if modulus is not None:
        out = [v % modulus for v in out]
    return out


@dataclass(frozen=True, eq=False)
class RElement:
    """Element of R tensor Q, stored as integer numerators over a common denominator.

    Elements of R proper are those whose denominator is supported on the
    primes of N (see :meth:`is_integral`).
    """

    ring: NumberRing
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        num = tuple(int(v) for v in self.num)
        den = int(self.den)
        if len(num) != self.ring.degree:
            raise ValueError("numerator length must equal the ring degree")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-v for v in num), -den
        g = gcd(den, *num)
        if g > 1:
            num, den = tuple(v // g for v in num), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_rationals(cls, ring: NumberRing, coeffs: list) -> "RElement":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        n = ring.degree
        if len(ints) > n:
            p = Poly(ints, "x") % Poly(ring.f, "x")
            ints = [int(c) for c in p.coeffs]
        ints += [0] * (n - len(ints))
        return cls(ring, tuple(ints), den)

    # queries ----------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    @property
    def value(self) -> Poly:
        return Poly(self.coeffs, "x")

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_integral(self, extra_primes: Iterable[int] = ()) -> bool:
        return strip_primes(self.den, tuple(self.ring.primes) + tuple(extra_primes)) == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def render(self) -> str:
        """Scalar for degree-one rings, coefficient list otherwise."""
        parts = [_render(c) for c in self.coeffs]
        return parts[0] if self.ring.degree == 1 else "[" + ", ".join(parts) + "]"

    def __repr__(self):
        return f"RElement({self.render()})"

    def __eq__(self, other):
        if isinstance(other, RElement):
            return self.ring == other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "RElement":
        if isinstance(other, RElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RElement(self.ring, tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)), self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RElement(self.ring, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return RElement(self.ring, tuple(a * c.numerator for a in self.num), self.den * c.denominator)
        o = self._coerce(other)
        return RElement(self.ring, tuple(_mul_mod_f(self.num, o.num, self.ring.f)), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.ring.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def multiplication_matrix(self) -> list[list[int]]:
        """Integer matrix (scaled by den) of multiplication on the power basis; columns are images."""
        n = self.ring.degree
        cols = [_mul_mod_f(self.num, [1 if i == j else 0 for i in range(n)], self.ring.f) for j in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def inverse(self) -> "RElement":
        """Inverse in R tensor Q; NotInvertible for zero divisors."""
        n = self.ring.degree
        sol = solve_rational(self.multiplication_matrix(), [1] + [0] * (n - 1))
        if sol is None:
            raise NotInvertible(f"{self.render()} is a zero divisor")
        return RElement.from_rationals(self.ring, [c * self.den for c in sol])

    def is_unit(self) -> bool:
        """Unit of R itself (not merely of R tensor Q)."""
        try:
            return self.is_integral() and self.inverse().is_integral()
        except NotInvertible:
            return False

    # reduction -----------------------------------------------------------

    def residue(self, modulus: int) -> tuple[int, ...]:
        """Image in (Z/modulus)[x]/(f); requires den prime to modulus."""
        inv = pow(self.den, -1, modulus)
        return tuple(v * inv % modulus for v in self.num)


def _render(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusLift:
    """The unique endomorphism of R/p^r lifting x -> x^p, recorded by the image of x."""

    ring: NumberRing
    p: int
    r: int
    image: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.p**self.r

    @cached_property
    def _powers(self) -> list[list[int]]:
        n, M = self.ring.degree, self.modulus
        pw = [[1 % M] + [0] * (n - 1)]
        for _ in range(1, n):
            pw.append(_mul_mod_f(pw[-1], self.image, self.ring.f, M))
        return pw

    def apply_residue(self, a: Sequence[int]) -> tuple[int, ...]:
        """phi_p on a residue vector in (Z/p^r)[x]/(f)."""
        M = self.modulus
        out = [0] * self.ring.degree
        for c, pw in zip(a, self._powers):
            if c:
                for i, v in enumerate(pw):
                    out[i] += c * v
        return tuple(v % M for v in out)

    def apply(self, a: RElement) -> tuple[int, ...]:
        return self.apply_residue(a.residue(self.modulus))

    def reduce(self, r: int) -> "FrobeniusLift":
        if r > self.r:
            raise ValueError("cannot raise precision by reduction")
        M = self.p**r
        return FrobeniusLift(self.ring, self.p, r, tuple(v % M for v in self.image))


def _poly_eval_mod(coeffs: Sequence[int], y: Sequence[int], f: Sequence[int], M: int) -> list[int]:
    n = len(f) - 1
    acc = [0] * n
    for c in reversed(coeffs):
        acc = _mul_mod_f(acc, y, f, M)
        acc[0] = (acc[0] + c) % M
    return acc


def _inverse_mod_prime_power(a: list[int], f: Sequence[int], p: int, r: int) -> list[int] | None:
    n = len(f) - 1
    cols = [_mul_mod_f(a, [1 if i == j else 0 for i in range(n)], f, p) for j in range(n)]
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    b = solve_mod_prime(mat, [1] + [0] * (n - 1), p)
    if b is None:
        return None
    M, prec = p**r, 1
    while prec < r:
        prec *= 2
        ab = _mul_mod_f(a, b, f, M)
        two_minus = [(-v) % M for v in ab]
        two_minus[0] = (two_minus[0] + 2) % M
        b = _mul_mod_f(b, two_minus, f, M)
    return [v % M for v in b]


@lru_cache(maxsize=None)
def frobenius_lift(ring: NumberRing, p: int, r: int) -> FrobeniusLift:
    """Hensel-lift x -> x^p to an endomorphism of R/p^r."""
    if p in ring.primes:
        raise ValueError(f"p={p} is inverted in {ring.name()}; no Frobenius lift is needed")
    if r < 1:
        raise ValueError("precision must be at least 1")
    f = ring.f
    n = ring.degree
    M = p**r
    xp = [0] * max(p + 1, n)
    xp[p] = 1
    y = [int(c) % M for c in (Poly(xp, "x") % Poly(f, "x")).coeffs]
    y += [0] * (n - len(y))
    fprime = [i * c for i, c in enumerate(f)][1:]
    for _ in range(r.bit_length() + 2):
        inv = _inverse_mod_prime_power(_poly_eval_mod(fprime, y, f, M), f, p, r)
        if inv is None:
            raise NonEtaleAtP(p)
        fy = _poly_eval_mod(f, y, f, M)
        if not any(fy):
            break
        corr = _mul_mod_f(fy, inv, f, M)
        y = [(u - v) % M for u, v in zip(y, corr)]
    if any(_poly_eval_mod(f, y, f, M)):  # pragma: no cover - Newton converges for etale f
        raise NonEtaleAtP(p)
    return FrobeniusLift(ring, p, r, tuple(y))


def lift_for_level(ring: NumberRing, p: int, m: int) -> FrobeniusLift:
    """Frobenius lift with enough precision for congruences at truncation level m."""
    return frobenius_lift(ring, p, valuation(m, p) + 1)
