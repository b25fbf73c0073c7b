"""Roots of unity, the first q-polylogarithm and the main comparison.

At level m the series Li_1 = sum_{d not | k} T^k / [k]_q is, modulo [m]_q,
the rational function

    (1 / (1 - T^m)) * sum_{0 < k < m, d not | k} T^k / [k]_q,

which is how it is stored here (one rational function per index d | e | m).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .cyclosyn import chern_cocycle, s_d, EmPair, can_minus_frob
from .errors import RootUnavailable
from .exactalg import (
    ANY_PRIME,
    ComponentElement,
    NumberRing,
    Poly,
    RElement,
    RPoly,
    component_invert,
    cyclotomic_coeffs,
    cyclotomic_resultant_primes,
    divisors,
    euler_phi,
    exact_divide,
    integers,
    q_integer,
)
from .habiro import HabiroTruncElement, ModulusProfile, TwistElement, log_unit
from .qwitt import at_d_indices, at_d_support
from .report import FAIL, PASS, VerificationReport


# roots of unity ------------------------------------------------------------------


def _cyclotomic_conductor(ring: NumberRing) -> int | None:
    """G with f = Phi_G, if the ring is presented that way."""
    n = ring.degree
    for G in range(1, 6 * n * n + 3):
        if euler_phi(G) == n and tuple(ring.f) == cyclotomic_coeffs(G):
            return G
    return None


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_g^a inside a ring containing the g-th roots of unity, with g | N."""

    ring: NumberRing
    order: int
    exponent: int = 1

    def __post_init__(self):
        g = self.order
        if g < 2:
            raise ValueError("1 - zeta must be a unit, so zeta = 1 is excluded")
        if gcd(self.exponent, g) != 1:
            raise ValueError(f"exponent {self.exponent} is not prime to the order {g}")
        if self.ring.N % g:
            raise ValueError(f"the order {g} must divide N = {self.ring.N}")
        object.__setattr__(self, "exponent", self.exponent % g)
        self.value  # noqa: B018 - validates availability

    @property
    def value(self) -> RElement:
        return self.power(1)

    def power(self, k: int) -> RElement:
        g, k = self.order, (self.exponent * k) % self.order
        if g == 2:
            return self.ring.const((-1) ** k)
        G = _cyclotomic_conductor(self.ring)
        if G is None or G % g:
            raise RootUnavailable(1, g)
        return self.ring.gen ** ((G // g) * k % G)

    def root(self, e: int) -> RElement:
        """The unique e-th root zeta^{1/e} of order dividing g."""
        if gcd(e, self.order) != 1:
            raise RootUnavailable(e, self.order)
        return self.power(pow(e, -1, self.order))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.ring, self.order, -self.exponent)

    def label(self) -> str:
        return f"zeta_{self.order}^{self.exponent}"


def zeta_class(zeta: RootOfUnity, m: int, n: int = 2) -> HabiroTruncElement:
    """[zeta]: the constant zeta^{1/e} at every e | m."""
    ring = zeta.ring
    return HabiroTruncElement.build(
        ring, ModulusProfile.uniform(m, n), lambda e, k: ComponentElement.const(ring, e, k, zeta.root(e))
    )


def canonical_unit_lift(zeta: RootOfUnity, m: int) -> HabiroTruncElement:
    """prod_{0 <= j < m} (1 - q^j [zeta]) modulo Phi_e^2."""
    ring = zeta.ring

    def comp(e, n):
        w = zeta.root(e)
        acc = RPoly.constant(ring, 1)
        for j in range(m):
            acc = acc * (RPoly.constant(ring, 1) - RPoly.monomial(ring, j, w))
        return acc.reduce(e, n)

    return HabiroTruncElement.build(ring, ModulusProfile.uniform(m, 2), comp)


def monomial_lift(zeta: RootOfUnity, m: int, sign: int = 1, qshift: int = 0) -> HabiroTruncElement:
    """sign * q^qshift * [zeta]^m: the monomial lift used for root-of-unity units."""
    ring = zeta.ring
    return HabiroTruncElement.build(
        ring,
        ModulusProfile.uniform(m, 2),
        lambda e, n: RPoly.monomial(ring, qshift, zeta.root(e) ** m * sign).reduce(e, n),
    )


def minus_zeta_lift(zeta: RootOfUnity, m: int) -> HabiroTruncElement:
    """prod_{j<m} (-q^j [zeta]), a lift of the norm of -zeta."""
    return monomial_lift(zeta, m, (-1) ** m, m * (m - 1) // 2)


# polynomials in T with component coefficients -------------------------------------


def _tmul(a: Sequence[ComponentElement], b: Sequence[ComponentElement]) -> list[ComponentElement]:
    zero = (a[0] if a else b[0]) * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _tadd(a, b, sign=1):
    n = max(len(a), len(b))
    zero = (a[0] if a else b[0]) * 0
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) * sign for i in range(n)]


def _tequal(a, b) -> bool:
    diff = _tadd(a, b, -1)
    return all(c.is_zero() for c in diff)


@dataclass(frozen=True, eq=False)
class RationalFunctionInT:
    """numerator / denominator, both polynomials in T over one component ring."""

    numerator: tuple[ComponentElement, ...]
    denominator: tuple[ComponentElement, ...]

    def evaluate(self, t: ComponentElement, allowed=ANY_PRIME) -> ComponentElement:
        def horner(coeffs):
            acc = t * 0
            for c in reversed(coeffs):
                acc = acc * t + c
            return acc

        return exact_divide(horner(self.numerator), horner(self.denominator), allowed)

    def reduce_exponent(self, n: int) -> "RationalFunctionInT":
        return RationalFunctionInT(
            tuple(c.reduce_exponent(n) for c in self.numerator), tuple(c.reduce_exponent(n) for c in self.denominator)
        )

    def same_as(self, other: "RationalFunctionInT") -> bool:
        """Equality of rational functions by cross-multiplication."""
        return _tequal(_tmul(self.numerator, other.denominator), _tmul(other.numerator, self.denominator))


def _inverse_qint(ring: NumberRing, k: int, e: int, n: int) -> ComponentElement:
    return component_invert(ComponentElement.from_poly(ring, q_integer(k), e, n), ANY_PRIME)


def _qint_support(k: int, e: int) -> frozenset[int]:
    """Primes that may divide denominators of 1/[k]_q modulo powers of Phi_e."""
    out: set[int] = set()
    for f in divisors(k):
        if f > 1 and f != e:
            out.update(cyclotomic_resultant_primes(e, f))
    return frozenset(out)


def li1_formal(d: int, m: int, ring: NumberRing | None = None, n: int = 2) -> dict[int, RationalFunctionInT]:
    """The truncated series at level m, one rational function per index d | e | m."""
    if d < 2:
        raise ValueError("the polylogarithm at d needs d >= 2")
    ring = integers() if ring is None else ring
    out = {}
    for e in at_d_indices(m, d):
        zero = ComponentElement.zero(ring, e, n)
        num = [zero] * m
        for k in range(1, m):
            if k % d:
                num[k] = _inverse_qint(ring, k, e, n)
        den = [zero] * (m + 1)
        den[0] = den[0] + 1
        den[m] = den[m] - 1
        out[e] = RationalFunctionInT(tuple(num), tuple(den))
    return out


def li1_support(ring: NumberRing, m: int, d: int) -> frozenset[int]:
    return at_d_support(ring, m, d, inverted=range(2, m))


def li1_class(zeta: RootOfUnity, d: int, m: int) -> TwistElement:
    """[m]_q * Li_1 evaluated at T = [zeta], as a twist element at d."""
    ring = zeta.ring
    allowed = li1_support(ring, m, d)
    formal = li1_formal(d, m, ring)
    qm = RPoly.from_poly(ring, q_integer(m))
    comps = {}
    for e, fn in formal.items():
        t = ComponentElement.const(ring, e, 2, zeta.root(e))
        comps[e] = qm.reduce(e, 2) * fn.evaluate(t, allowed)
    return TwistElement(ring, m, d, comps, allowed)


# the key power-series identity ---------------------------------------------------------


def key_identity_check(d: int, m: int, e: int, negate: bool = False) -> bool:
    """Cross-multiplied form of the logarithm identity over Z[q]/Phi_e^2.

    With A = prod_j (1 - q^j T)^d and B = prod_j (1 - q^{jd} T^d), checks
    A = B mod Phi_e and (A - B)(1 - T^m) = -d [m]_q S B, where S is the
    truncated sum of T^k / [k]_q; also checks that each 1/[k]_q only uses
    the primes dividing the resultant of Phi_e with [k]_q.  ``negate`` flips
    the sign of the right-hand side (a negative control).
    """
    if d < 2 or e % d or m % e:
        raise ValueError("need d >= 2 and d | e | m")
    ring = integers()
    one = ComponentElement.const(ring, e, 2, 1)
    zero = one * 0

    def q_pow(j):
        return ComponentElement.from_poly(ring, Poly.monomial(j), e, 2)

    A = [one]
    B = [one]
    for j in range(m):
        A = _tmul(A, [one, -q_pow(j)])
        B = _tmul(B, [one] + [zero] * (d - 1) + [-q_pow(j * d)])
    A_d = [one]
    for _ in range(d):
        A_d = _tmul(A_d, A)
    A = A_d
    if not all((a - b).is_divisible_by_phi() for a, b in zip(A, B)):
        return False
    S = [zero] * m
    for k in range(1, m):
        if k % d:
            inv = _inverse_qint(ring, k, e, 2)
            if not inv.denominator_support() <= _qint_support(k, e):
                return False
            S[k] = inv
    one_minus_Tm = [one] + [zero] * (m - 1) + [-one]
    lhs = _tmul(_tadd(A, B, -1), one_minus_Tm)
    scale = ComponentElement.from_poly(ring, q_integer(m), e, 2) * (d if negate else -d)
    rhs = [c * scale for c in _tmul(S, B)]
    return _tequal(lhs, rhs)


# the main comparison ------------------------------------------------------------------------


def _witness(e, lhs, rhs) -> dict:
    return {"e": e, "lhs": lhs[e].rational_rows(), "rhs": rhs[e].rational_rows()}


def compare_twists(suite: str, params: dict, lhs: TwistElement, rhs: TwistElement, start: float) -> VerificationReport:
    bad = lhs.first_difference(rhs)
    millis = int((time.perf_counter() - start) * 1000)
    if bad is None:
        return VerificationReport(suite, params, PASS, None, millis)
    return VerificationReport(suite, params, FAIL, _witness(bad, lhs, rhs), millis)


def main_theorem_check(zeta: RootOfUnity, d: int, m: int) -> VerificationReport:
    """chern(1 - zeta) with the canonical lift against -Li_1, componentwise."""
    start = time.perf_counter()
    params = {"ring": zeta.ring.name(), "zeta": zeta.label(), "d": d, "m": m}
    lhs = chern_cocycle(1 - zeta.value, m, d, canonical_unit_lift(zeta, m))
    rhs = -li1_class(zeta, d, m)
    return compare_twists("main-theorem", params, lhs, rhs, start)


def symmetry_cocycle_check(zeta: RootOfUnity, d: int, m: int) -> VerificationReport:
    """Literal equality of the Li_1 cocycles at zeta and zeta^{-1}."""
    start = time.perf_counter()
    params = {"ring": zeta.ring.name(), "zeta": zeta.label(), "d": d, "m": m}
    return compare_twists("li1-symmetry-cocycle", params, li1_class(zeta, d, m), li1_class(zeta.inverse(), d, m), start)


def symmetry_class_check(zeta: RootOfUnity, d: int, m: int) -> VerificationReport:
    """Li_1(zeta^{-1}) - Li_1(zeta) is the coboundary (can - Frob)(x) of an explicit x.

    With y1, y2 the canonical lifts for 1 - zeta and 1 - zeta^{-1} and L the
    monomial lift of -zeta, x = log(y1 / (L * y2)).
    """
    start = time.perf_counter()
    params = {"ring": zeta.ring.name(), "zeta": zeta.label(), "d": d, "m": m}
    y1 = canonical_unit_lift(zeta, m)
    y2 = canonical_unit_lift(zeta.inverse(), m)
    x = log_unit(y1 / (minus_zeta_lift(zeta, m) * y2))
    lhs = li1_class(zeta.inverse(), d, m) - li1_class(zeta, d, m)
    return compare_twists("li1-symmetry-class", params, lhs, can_minus_frob(x, d), start)


def root_vanishing_check(zeta: RootOfUnity, d: int, m: int) -> VerificationReport:
    """Chern cocycles of zeta and of -zeta with their monomial lifts vanish."""
    start = time.perf_counter()
    params = {"ring": zeta.ring.name(), "zeta": zeta.label(), "d": d, "m": m}
    zero = TwistElement.zero(zeta.ring, m, d)
    c1 = s_d(EmPair(monomial_lift(zeta, m), zeta.value), d)
    if not c1.is_zero():
        return compare_twists("root-vanishing", params, c1, zero, start)
    c2 = s_d(EmPair(minus_zeta_lift(zeta, m), -zeta.value), d)
    return compare_twists("root-vanishing", params, c2, zero, start)
