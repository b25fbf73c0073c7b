"""Big q-Witt vectors in q-ghost coordinates.

An element of q-W_m(R) is a tuple (c_e)_{e|m} with c_e in R[q]/Phi_e(q).
Elements "at d" keep only the indices e with d | e | m and live in a
localisation where Phi_{e'} is inverted for d not dividing e' > 1; their
allowed denominators are tracked by :func:`at_d_support`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, NamedTuple

from .errors import LevelMismatch, NotInImage
from .exactalg import (
    ComponentElement,
    NumberRing,
    Poly,
    RElement,
    RPoly,
    cyclotomic_coeffs,
    cyclotomic_poly,
    cyclotomic_resultant_primes,
    divisors,
    lift_for_level,
    poly_invmod,
    prime_factors,
    valuation,
)
from .exactalg.arith import crt_pair


def at_d_support(
    ring: NumberRing, m: int, d: int, inverted: Iterable[int] | None = None
) -> frozenset[int]:
    """Primes allowed in denominators of components d | e | m after inverting Phi_{e'}.

    The inverted factors are Phi_{e'} for e' in ``inverted`` (default: the
    divisors of m) with e' > 1 and d not dividing e'.
    """
    inverted = divisors(m) if inverted is None else tuple(inverted)
    out = set(ring.primes)
    for e in divisors(m):
        if e % d:
            continue
        for e2 in inverted:
            if e2 > 1 and e2 % d and e2 != e:
                out.update(cyclotomic_resultant_primes(e, e2))
    return frozenset(out)


def at_d_indices(m: int, d: int) -> tuple[int, ...]:
    return tuple(e for e in divisors(m) if e % d == 0)


@dataclass(frozen=True, eq=False)
class QWittElement:
    """q-ghost tuple (c_e)_{e|m}, every component of exponent one."""

    ring: NumberRing
    m: int
    comps: Mapping[int, ComponentElement]

    def __post_init__(self):
        comps = dict(self.comps)
        if sorted(comps) != list(divisors(self.m)):
            raise ValueError(f"components must be indexed by the divisors of {self.m}")
        for e, c in comps.items():
            if c.e != e or c.n != 1 or c.ring != self.ring:
                raise ValueError(f"component {e} has the wrong shape")
            c.check_denominators((), f"component {e}")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def build(cls, ring: NumberRing, m: int, fn: Callable[[int], object]) -> "QWittElement":
        return cls(ring, m, {e: _component(ring, e, fn(e)) for e in divisors(m)})

    def __getitem__(self, e: int) -> ComponentElement:
        return self.comps[e]

    def _same(self, other):
        if not isinstance(other, QWittElement) or (other.ring, other.m) != (self.ring, self.m):
            raise LevelMismatch("q-Witt elements at different levels or rings")

    def __add__(self, other):
        self._same(other)
        return QWittElement(self.ring, self.m, {e: c + other[e] for e, c in self.comps.items()})

    def __sub__(self, other):
        self._same(other)
        return QWittElement(self.ring, self.m, {e: c - other[e] for e, c in self.comps.items()})

    def __neg__(self):
        return QWittElement(self.ring, self.m, {e: -c for e, c in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, QWittElement):
            self._same(other)
            return QWittElement(self.ring, self.m, {e: c * other[e] for e, c in self.comps.items()})
        return QWittElement(self.ring, self.m, {e: c * other for e, c in self.comps.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return QWittElement(self.ring, self.m, {e: c**k for e, c in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, QWittElement):
            return NotImplemented
        return (self.ring, self.m) == (other.ring, other.m) and all(c == other[e] for e, c in self.comps.items())

    __hash__ = None

    def render(self) -> str:
        return "{" + ", ".join(f"{e}: {c.render()}" for e, c in sorted(self.comps.items())) + "}"


@dataclass(frozen=True, eq=False)
class QWittAtD:
    """Components (c_e)_{d|e|m} with denominators confined to ``allowed``."""

    ring: NumberRing
    m: int
    d: int
    comps: Mapping[int, ComponentElement]
    allowed: frozenset[int] = frozenset()

    def __post_init__(self):
        comps = dict(self.comps)
        if sorted(comps) != list(at_d_indices(self.m, self.d)):
            raise ValueError(f"components must be indexed by d | e | m for d={self.d}, m={self.m}")
        for e, c in comps.items():
            c.check_denominators(self.allowed, f"component {e}")
        object.__setattr__(self, "comps", comps)
        object.__setattr__(self, "allowed", frozenset(self.allowed))

    def __getitem__(self, e):
        return self.comps[e]

    def _same(self, other):
        if not isinstance(other, QWittAtD) or (other.ring, other.m, other.d) != (self.ring, self.m, self.d):
            raise LevelMismatch("elements at different levels or divisors")

    def __add__(self, other):
        self._same(other)
        return QWittAtD(self.ring, self.m, self.d, {e: c + other[e] for e, c in self.comps.items()}, self.allowed | other.allowed)

    def __sub__(self, other):
        self._same(other)
        return QWittAtD(self.ring, self.m, self.d, {e: c - other[e] for e, c in self.comps.items()}, self.allowed | other.allowed)

    def __mul__(self, other):
        self._same(other)
        return QWittAtD(self.ring, self.m, self.d, {e: c * other[e] for e, c in self.comps.items()}, self.allowed | other.allowed)

    def __eq__(self, other):
        if not isinstance(other, QWittAtD):
            return NotImplemented
        return (self.ring, self.m, self.d) == (other.ring, other.m, other.d) and all(
            c == other[e] for e, c in self.comps.items()
        )

    __hash__ = None


def _component(ring: NumberRing, e: int, value, n: int = 1) -> ComponentElement:
    if isinstance(value, ComponentElement):
        return value
    if isinstance(value, RPoly):
        return value.reduce(e, n)
    if isinstance(value, Poly):
        return ComponentElement.from_poly(ring, value, e, n)
    return ComponentElement.const(ring, e, n, value)


# ---------------------------------------------------------------------------


def qw_add(a: QWittElement, b: QWittElement) -> QWittElement:
    return a + b


def qw_mul(a: QWittElement, b: QWittElement) -> QWittElement:
    return a * b


def qw_one(ring: NumberRing, m: int) -> QWittElement:
    return QWittElement.build(ring, m, lambda e: 1)


def q_teichmuller(x: RElement, m: int) -> QWittElement:
    """Component at e is the constant x^(m/e)."""
    return QWittElement.build(x.ring, m, lambda e: x ** (m // e))


def q_frobenius(c: QWittElement, m: int) -> QWittElement:
    """F_{m'/m}: restriction of the index set to the divisors of m."""
    if c.m % m:
        raise LevelMismatch(f"{m} does not divide {c.m}")
    return QWittElement(c.ring, m, {e: c[e] for e in divisors(m)})


def q_verschiebung(c: QWittElement, d: int) -> QWittElement:
    """V_d: component e of the level-dm result is d*c_e when e | m, else 0."""
    m2 = c.m * d
    return QWittElement.build(c.ring, m2, lambda e: c[e] * d if c.m % e == 0 else 0)


def cyclotomic_norm(c: QWittElement, m2: int) -> QWittElement:
    """Pi_{m'/m}: component e | m' is c_{(e,m)}(q^{e/(e,m)})^{m'/[e,m]} mod Phi_e."""
    m = c.m
    if m2 % m:
        raise LevelMismatch(f"{m} does not divide {m2}")

    def comp(e):
        g = gcd(e, m)
        return c[g].substitute(e // g, e, 1) ** (m2 // lcm(e, m))

    return QWittElement.build(c.ring, m2, comp)


def cyclotomic_frobenius(c: QWittElement, d: int, allowed: Iterable[int] | None = None) -> QWittAtD:
    """Frob_d: component e (d | e | dm) is c_{e/d}(q^d) mod Phi_e."""
    m2 = d * c.m
    allowed = at_d_support(c.ring, m2, d) if allowed is None else frozenset(allowed)
    comps = {e: c[e // d].substitute(d, e, 1) for e in at_d_indices(m2, d)}
    return QWittAtD(c.ring, m2, d, comps, allowed)


def canonical_to_at_d(c: QWittElement, d: int, allowed: Iterable[int] | None = None) -> QWittAtD:
    allowed = at_d_support(c.ring, c.m, d) if allowed is None else frozenset(allowed)
    return QWittAtD(c.ring, c.m, d, {e: c[e] for e in at_d_indices(c.m, d)}, allowed)


# q-Dwork membership ---------------------------------------------------------


class DworkResult(NamedTuple):
    member: bool
    detail: dict  # lifts {e: RPoly} on success, witness on failure

    def __bool__(self):
        return self.member


def _residue_rows(p: RPoly, modulus: int) -> list[list[int]]:
    inv = pow(p.den, -1, modulus)
    return [[int(v) * inv % modulus for v in row] for row in p.num]


def _divmod_rows(rows: list[list[int]], monic: tuple[int, ...], modulus: int):
    n = len(monic) - 1
    rem = [list(r) for r in rows]
    width = len(rows[0]) if rows else 0
    quot = [[0] * width for _ in range(max(len(rem) - n, 0))]
    for k in range(len(rem) - 1, n - 1, -1):
        c = rem[k]
        if any(c):
            quot[k - n] = list(c)
            for j in range(n + 1):
                if monic[j]:
                    rem[k - n + j] = [(u - monic[j] * v) % modulus for u, v in zip(rem[k - n + j], c)]
    return quot, [[v % modulus for v in r] for r in rem[:n]]


def q_dwork_membership(c: QWittElement) -> DworkResult:
    """Constructive test for the image of the q-ghost map.

    Divisors are processed from the largest down.  At each e the lift is
    pinned down modulo Phi_e by c_e and modulo P = prod p^{v_p(m/e)} by the
    Frobenius images of the already fixed lifts at the indices p*e; the two
    conditions are compatible iff the remainder of (target - c_e) upon
    division by the monic Phi_e vanishes modulo P.  Any other admissible
    lift differs by a multiple of P*Phi_e, whose Frobenius image vanishes
    modulo every later constraint, so the greedy choice loses nothing.
    """
    ring, m = c.ring, c.m
    lifts: dict[int, RPoly] = {}
    for e in sorted(divisors(m), reverse=True):
        base = c[e].lift()
        phi_e = cyclotomic_coeffs(e)
        h_acc: list[list[int]] | None = None
        mod_acc = 1
        for p in prime_factors(m // e) if m // e > 1 else ():
            if p in ring.primes:
                continue
            v = valuation(m // e, p)
            M = p**v
            frob = lift_for_level(ring, p, m).reduce(v)
            target = [list(frob.apply_residue(row)) for row in _residue_rows(lifts[p * e], M)]
            own = _residue_rows(base, M)
            rows = max(len(target), len(own))
            diff = [
                [(a - b) % M for a, b in zip(_row(target, i, ring.degree), _row(own, i, ring.degree))]
                for i in range(rows)
            ]
            quot, rem = _divmod_rows(diff, phi_e, M)
            if any(any(r) for r in rem):
                return DworkResult(False, {"e": e, "p": p, "parent": p * e, "modulus": M})
            h_acc, mod_acc = _crt_rows(h_acc, mod_acc, quot, M)
        if h_acc:
            h = RPoly(ring, _rows_to_array(h_acc, ring.degree))
            lifts[e] = base + h * RPoly.from_poly(ring, Poly(phi_e))
        else:
            lifts[e] = base
    return DworkResult(True, lifts)


def _row(rows, i, width):
    return rows[i] if i < len(rows) else [0] * width


def _crt_rows(acc, mod_acc, new, M):
    if acc is None:
        return [list(r) for r in new], M
    rows = max(len(acc), len(new))
    width = len((acc or new)[0]) if (acc or new) else 0
    out = []
    for i in range(rows):
        a = _row(acc, i, width)
        b = _row(new, i, width)
        out.append([crt_pair(u, mod_acc, w, M)[0] for u, w in zip(a, b)])
    return out, mod_acc * M


def _rows_to_array(rows, width):
    import numpy as np

    arr = np.zeros((max(len(rows), 1), width), dtype=object)
    for i, r in enumerate(rows):
        arr[i, :] = r
    return arr


# Lambda-ring comparison for Z ------------------------------------------------


@dataclass(frozen=True)
class LambdaZPresentation:
    """Polynomial in q reduced modulo q^m - 1."""

    m: int
    value: Poly

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % (Poly.monomial(self.m) - 1))


def lambda_embed(f: LambdaZPresentation, ring: NumberRing) -> QWittElement:
    """Z[q]/(q^m - 1) -> q-W_m(Z): componentwise reduction."""
    if ring.degree != 1 or ring.N != 1:
        raise ValueError("the Lambda-ring comparison is implemented over Z")
    return QWittElement.build(ring, f.m, lambda e: f.value)


def lambda_embed_at_d(f: Poly, m: int, d: int, ring: NumberRing) -> QWittAtD:
    return canonical_to_at_d(lambda_embed(LambdaZPresentation(m, f), ring), d)


def lambda_extract(c: QWittElement) -> LambdaZPresentation:
    """Chinese remainder recombination over Q, then an integrality check."""
    if c.ring.degree != 1:
        raise ValueError("the Lambda-ring comparison is implemented over Z")
    acc, mod = Poly(()), Poly.const(1)
    for e in divisors(c.m):
        phi = cyclotomic_poly(e)
        ce = Poly([x.coeffs[0] for x in c[e].coefficients()])
        inv = poly_invmod(mod, phi)
        acc = acc + mod * (((ce - acc) * inv) % phi)
        mod = mod * phi
    if not acc.is_integral():
        raise NotInImage(c.m, f"recombined polynomial {acc.render()} is not integral")
    return LambdaZPresentation(c.m, acc)


def lambda_frobenius_square(f: LambdaZPresentation, d: int) -> LambdaZPresentation:
    """psi^d tensor (q -> q^d) on Z[q]/(q^m - 1), landing at level dm."""
    return LambdaZPresentation(d * f.m, f.value.substitute_power(d))
