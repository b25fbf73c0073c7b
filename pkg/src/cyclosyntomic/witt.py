"""Classical m-truncated big Witt vectors through ghost coordinates.

All ring operations go through the ghost map, which is injective for the
flat rings handled here; Witt coordinates are recovered with
:func:`from_ghost`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import LevelMismatch, NotInImage
from .exactalg import NumberRing, RElement, divisors, lift_for_level, prime_factors, valuation


def _check_keys(m: int, values: Sequence) -> tuple:
    values = tuple(values)
    if len(values) != len(divisors(m)):
        raise ValueError(f"level {m} needs {len(divisors(m))} entries, got {len(values)}")
    return values


@dataclass(frozen=True)
class _Tuple:
    ring: NumberRing
    m: int
    values: tuple[RElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _check_keys(self.m, self.values))
        if any(v.ring != self.ring for v in self.values):
            raise ValueError("entries live in a different ring")

    @classmethod
    def from_map(cls, ring: NumberRing, m: int, entries: Mapping[int, RElement]):
        return cls(ring, m, tuple(entries[e] for e in divisors(m)))

    @classmethod
    def of(cls, ring: NumberRing, m: int, entries: Sequence):
        return cls(ring, m, tuple(v if isinstance(v, RElement) else ring.const(v) for v in entries))

    def __getitem__(self, e: int) -> RElement:
        return self.values[divisors(self.m).index(e)]

    def items(self):
        return zip(divisors(self.m), self.values)

    def as_dict(self) -> dict[int, RElement]:
        return dict(self.items())

    def render(self) -> str:
        return "[" + ", ".join(v.render() for v in self.values) + "]"


class WittVector(_Tuple):
    """Witt coordinates (x_e) indexed by the divisors of m."""


class GhostTuple(_Tuple):
    """Ghost coordinates (gh_e) indexed by the divisors of m."""

    def _same(self, other: "GhostTuple"):
        if (self.ring, self.m) != (other.ring, other.m):
            raise LevelMismatch(f"levels {self.m} and {other.m}")

    def __add__(self, other: "GhostTuple") -> "GhostTuple":
        self._same(other)
        return GhostTuple(self.ring, self.m, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other) -> "GhostTuple":
        if isinstance(other, GhostTuple):
            self._same(other)
            return GhostTuple(self.ring, self.m, tuple(a * b for a, b in zip(self.values, other.values)))
        return GhostTuple(self.ring, self.m, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __neg__(self):
        return GhostTuple(self.ring, self.m, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)


def ghost(w: WittVector) -> GhostTuple:
    """gh_e = sum over d | e of d * x_d^(e/d)."""
    x = w.as_dict()
    out = []
    for e in divisors(w.m):
        acc = w.ring.zero
        for d in divisors(e):
            acc = acc + x[d] ** (e // d) * d
        out.append(acc)
    return GhostTuple(w.ring, w.m, tuple(out))


def from_ghost(g: GhostTuple) -> WittVector:
    """Invert the ghost map, raising NotInImage at the first non-integral coordinate."""
    x: dict[int, RElement] = {}
    for e in divisors(g.m):
        acc = g[e]
        for d in divisors(e)[:-1]:
            acc = acc - x[d] ** (e // d) * d
        xe = acc / e
        if not xe.is_integral():
            raise NotInImage(e, f"x_{e} = {xe.render()}")
        x[e] = xe
    return WittVector.from_map(g.ring, g.m, x)


def dwork_violation(g: GhostTuple) -> tuple[int, int] | None:
    """First (p, e) with gh_e != phi_p(gh_{e/p}) mod p^v_p(e), or None."""
    ring = g.ring
    for p in prime_factors(g.m) if g.m > 1 else ():
        if p in ring.primes:
            continue  # R/p = 0: the congruence is vacuous
        lift = lift_for_level(ring, p, g.m)
        for e in divisors(g.m):
            if e % p:
                continue
            v = valuation(e, p)
            phi = lift.reduce(v)
            if g[e].residue(p**v) != phi.apply(g[e // p]):
                return p, e
    return None


def dwork_check(g: GhostTuple) -> bool:
    return dwork_violation(g) is None


# operators ---------------------------------------------------------------


def ghost_frobenius(g: GhostTuple, d: int) -> GhostTuple:
    if g.m % d:
        raise LevelMismatch(f"{d} does not divide the level {g.m}")
    m = g.m // d
    return GhostTuple(g.ring, m, tuple(g[d * e] for e in divisors(m)))


def ghost_verschiebung(g: GhostTuple, d: int) -> GhostTuple:
    m2 = g.m * d
    vals = tuple(g[e // d] * d if e % d == 0 else g.ring.zero for e in divisors(m2))
    return GhostTuple(g.ring, m2, vals)


def witt_frobenius(w: WittVector, d: int) -> WittVector:
    """F_d: W_{dm} -> W_m."""
    return from_ghost(ghost_frobenius(ghost(w), d))


def witt_verschiebung(w: WittVector, d: int) -> WittVector:
    """V_d: W_m -> W_{dm}."""
    return from_ghost(ghost_verschiebung(ghost(w), d))


def restriction(w: WittVector, m: int) -> WittVector:
    if w.m % m:
        raise LevelMismatch(f"{m} does not divide {w.m}")
    return WittVector(w.ring, m, tuple(w[e] for e in divisors(m)))


def teichmuller(x: RElement, m: int) -> WittVector:
    """Witt vector (x, 0, ..., 0); its ghost coordinates are x^e."""
    return WittVector(x.ring, m, (x,) + (x.ring.zero,) * (len(divisors(m)) - 1))


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return from_ghost(ghost(a) + ghost(b))


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return from_ghost(ghost(a) * ghost(b))


def witt_scale(a: WittVector, k: int) -> WittVector:
    """Multiplication by the integer k (the image of k in W_m)."""
    return from_ghost(ghost(a) * k)


def witt_one(ring: NumberRing, m: int) -> WittVector:
    return teichmuller(ring.one, m)
