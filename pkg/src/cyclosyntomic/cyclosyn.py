"""The truncated cyclosyntomic complex and the first Chern class cocycle.

Degree zero is the Nygaard twist at level m, degree one the twist at d; the
differential is ``can - Frob_d``.  A unit u of R together with a Habiro lift
y of its cyclotomic norm gives the degree-one cocycle

    s_d(y, u) = log(norm_d(y) / Frob_d(y)) / [d]_{q^m},

where the division by [d]_{q^m} realises the division by d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LevelMismatch, WellDefinednessViolation
from .exactalg import (
    ANY_PRIME,
    RElement,
    RPoly,
    component_invert,
    divisors,
    exact_divide,
    q_integer_at_power,
)
from .habiro import (
    HabiroTruncElement,
    ModulusProfile,
    TwistElement,
    c_coordinates,
    divide_twist_by_qint,
    from_c_coordinates,
    habiro_frobenius,
    lifted_norm,
    log_unit,
    twist_transition,
)
from .qwitt import at_d_indices, at_d_support, q_teichmuller


@dataclass(frozen=True, eq=False)
class EmPair:
    """A unit lift y (exponent two at every e | m) whose reductions are the norms of z."""

    y: HabiroTruncElement
    z: RElement

    def __post_init__(self):
        m = self.y.m
        if self.y.profile != ModulusProfile.uniform(m, 2):
            raise ValueError("the lift must have exponent two at every divisor of the level")
        if self.y.reduction() != q_teichmuller(self.z, m):
            bad = next(e for e in divisors(m) if self.y[e].reduce_exponent(1) != self.z ** (m // e))
            raise WellDefinednessViolation(bad)

    @property
    def m(self) -> int:
        return self.y.m


def twist_support(ring, m: int, d: int) -> frozenset[int]:
    """Denominators tolerated in degree one at level m, divisor d."""
    return at_d_support(ring, m, d, inverted=divisors(d * m))


def can_twist(x: TwistElement, d: int) -> TwistElement:
    """Restriction of a Nygaard twist element to the indices d | e | m."""
    _nygaard(x)
    comps = {e: x[e] for e in at_d_indices(x.m, d)}
    return TwistElement(x.ring, x.m, d, comps, x.allowed | twist_support(x.ring, x.m, d))


def frob_twist(x: TwistElement, d: int) -> TwistElement:
    """Twisted Frobenius: Habiro Frobenius to level dm, divide by [d]_{q^m}, restrict."""
    _nygaard(x)
    ring, m = x.ring, x.m
    as_habiro = HabiroTruncElement(ring, ModulusProfile.uniform(m, 2), x.comps, x.allowed)
    pushed = habiro_frobenius(as_habiro, d)
    at_dm = TwistElement(ring, d * m, d, pushed.comps, x.allowed)
    return divide_twist_by_qint(at_dm, d, m, x.allowed | twist_support(ring, m, d))


def frob_twist_via_coordinates(x: TwistElement, d: int) -> TwistElement:
    """Same map through normalised coordinates: c_e -> c_{e/d}(q^d)."""
    _nygaard(x)
    c = c_coordinates(x)
    coords = {e: c[e // d].substitute(d, e, 1) for e in at_d_indices(x.m, d)}
    return from_c_coordinates(x.ring, x.m, d, coords)


def can_minus_frob(x: TwistElement, d: int) -> TwistElement:
    return can_twist(x, d) - frob_twist(x, d)


def s_d(pair: EmPair, d: int) -> TwistElement:
    """The homotopy s_d evaluated on a pair, as a degree-one twist element at level m."""
    y, ring, m = pair.y, pair.y.ring, pair.m
    dm = d * m
    target = ModulusProfile(dm, {e: 2 if m % e == 0 else 1 for e in at_d_indices(dm, d)})
    norm = lifted_norm(y, dm, target)
    frob = habiro_frobenius(y, d, target)
    for e in target.indices:
        if norm[e].reduce_exponent(1) != frob[e].reduce_exponent(1):
            raise WellDefinednessViolation(e)
    allowed = twist_support(ring, m, d) | y.allowed
    comps = {}
    for e in at_d_indices(m, d):
        ratio = norm[e] * component_invert(frob[e], ANY_PRIME)
        divisor = RPoly.from_poly(ring, q_integer_at_power(d, m)).reduce(e, 2)
        comps[e] = exact_divide(ratio - 1, divisor, allowed)
    return TwistElement(ring, m, d, comps, allowed)


def chern_cocycle(u: RElement, m: int, d: int, lift: HabiroTruncElement) -> TwistElement:
    """Cocycle representing the first Chern class of the unit u at level m."""
    if lift.m != m:
        raise LevelMismatch(f"lift sits at level {lift.m}, not {m}")
    return s_d(EmPair(lift, u), d)


def lift_independence(u: RElement, m: int, d: int, lift1: HabiroTruncElement, lift2: HabiroTruncElement) -> bool:
    """Two lifts of the same norm give cocycles differing by (can - Frob)(log(lift2/lift1))."""
    x = log_unit(lift2 / lift1)
    lhs = chern_cocycle(u, m, d, lift2) - chern_cocycle(u, m, d, lift1)
    return lhs == can_minus_frob(x, d)


def cross_level_check(
    u: RElement, m: int, m2: int, d: int, lift_m2: HabiroTruncElement, lift_m: HabiroTruncElement
) -> bool:
    """The transition from level m2 down to m carries the cocycle at m2 to the one at m."""
    if m2 % m:
        raise LevelMismatch(f"{m} does not divide {m2}")
    high = chern_cocycle(u, m2, d, lift_m2)
    low = chern_cocycle(u, m, d, lift_m)
    moved = twist_transition(high, m, high.allowed | low.allowed)
    return moved == low


def _nygaard(x: TwistElement):
    if x.d != 1:
        raise ValueError("expected a Nygaard twist element (divisor 1)")

