"""Truncated Habiro rings and the square-zero twists.

A truncated element is a tuple (f_e) with f_e in R[q]/Phi_e(q)^{n_e}, the
exponents n_e forming a :class:`ModulusProfile`.  Twist elements live in
exponent two and are divisible by Phi_e; they model the Nygaard twist
(q^m - 1)/(q^m - 1)^2 (divisor d = 1) and the twist at d, where only the
indices d | e | m are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

from .errors import LevelMismatch, NotCongruentToOne, NotDivisible, PrecisionShortfall
from .exactalg import (
    ANY_PRIME,
    ComponentElement,
    NumberRing,
    Poly,
    RPoly,
    component_invert,
    cyclotomic_poly,
    divisors,
    exact_divide,
    q_integer_at_power,
)
from .qwitt import QWittElement, at_d_indices, at_d_support


@dataclass(frozen=True)
class ModulusProfile:
    """Exponents n_e on a set of indices dividing ``m``; zero exponents are dropped."""

    m: int
    exponents: Mapping[int, int]

    def __post_init__(self):
        exps = {}
        for e, n in dict(self.exponents).items():
            if self.m % e:
                raise ValueError(f"index {e} does not divide the level {self.m}")
            if n < 0:
                raise ValueError("exponents must be nonnegative")
            if n:
                exps[e] = n
        object.__setattr__(self, "exponents", tuple(sorted(exps.items())))

    def __hash__(self):
        return hash((self.m, self.exponents))

    @classmethod
    def uniform(cls, m: int, n: int) -> "ModulusProfile":
        """Profile of (q^m - 1)^n."""
        return cls(m, {e: n for e in divisors(m)})

    @classmethod
    def mixed(cls, m: int, m2: int) -> "ModulusProfile":
        """Profile of (q^m - 1)(q^{m2} - 1) at level m2."""
        if m2 % m:
            raise LevelMismatch(f"{m} does not divide {m2}")
        return cls(m2, {e: 2 if m % e == 0 else 1 for e in divisors(m2)})

    def at(self, e: int) -> int:
        return dict(self.exponents).get(e, 0)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.exponents)

    def keep(self, pred: Callable[[int], bool]) -> "ModulusProfile":
        return ModulusProfile(self.m, {e: n for e, n in self.exponents if pred(e)})

    def restrict_to_d(self, d: int) -> "ModulusProfile":
        return self.keep(lambda e: e % d == 0)


class HabiroTruncElement:
    """Tuple of residues f_e mod Phi_e^{n_e}, with a declared denominator support."""

    __slots__ = ("ring", "profile", "comps", "allowed")

    def __init__(
        self,
        ring: NumberRing,
        profile: ModulusProfile,
        comps: Mapping[int, ComponentElement],
        allowed: Iterable[int] = (),
    ):
        comps = dict(comps)
        if sorted(comps) != list(profile.indices):
            raise ValueError("components do not match the modulus profile")
        allowed = frozenset(allowed)
        for e, c in comps.items():
            if (c.ring, c.e, c.n) != (ring, e, profile.at(e)):
                raise ValueError(f"component {e} has the wrong shape")
            c.check_denominators(allowed, f"component {e}")
        self.ring, self.profile, self.comps, self.allowed = ring, profile, comps, allowed

    @classmethod
    def build(cls, ring, profile, fn, allowed=()):
        return cls(ring, profile, {e: fn(e, n) for e, n in profile.exponents}, allowed)

    @classmethod
    def one(cls, ring: NumberRing, profile: ModulusProfile) -> "HabiroTruncElement":
        return cls.build(ring, profile, lambda e, n: ComponentElement.const(ring, e, n, 1))

    def __getitem__(self, e: int) -> ComponentElement:
        return self.comps[e]

    @property
    def m(self) -> int:
        return self.profile.m

    def _binary(self, other, op):
        if not isinstance(other, HabiroTruncElement):
            return HabiroTruncElement(
                self.ring, self.profile, {e: op(c, other) for e, c in self.comps.items()}, self.allowed
            )
        if (other.ring, other.profile) != (self.ring, self.profile):
            raise LevelMismatch("Habiro elements with different rings or profiles")
        return HabiroTruncElement(
            self.ring,
            self.profile,
            {e: op(c, other[e]) for e, c in self.comps.items()},
            self.allowed | other.allowed,
        )

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __pow__(self, k: int):
        if k < 0:
            return self.invert(ANY_PRIME) ** (-k)
        return HabiroTruncElement(self.ring, self.profile, {e: c**k for e, c in self.comps.items()}, self.allowed)

    def invert(self, allowed=None) -> "HabiroTruncElement":
        """Componentwise inverse; ``ANY_PRIME`` accepts whatever denominators arise."""
        allowed = self.allowed if allowed is None else allowed
        comps = {e: component_invert(c, allowed) for e, c in self.comps.items()}
        if allowed is ANY_PRIME:
            keep = self.allowed | _support(comps)
        else:
            keep = self.allowed | frozenset(allowed)
        return HabiroTruncElement(self.ring, self.profile, comps, keep)

    def __truediv__(self, other: "HabiroTruncElement"):
        return self * other.invert(ANY_PRIME)

    def __eq__(self, other):
        if not isinstance(other, HabiroTruncElement):
            return NotImplemented
        return (self.ring, self.profile) == (other.ring, other.profile) and all(
            c == other[e] for e, c in self.comps.items()
        )

    __hash__ = None

    def reduce_to(self, profile: ModulusProfile) -> "HabiroTruncElement":
        """Project to a weaker profile on a subset of the indices (same level)."""
        if profile.m != self.m:
            raise LevelMismatch("projection keeps the level")
        comps = {}
        for e, n in profile.exponents:
            if e not in self.comps:
                raise PrecisionShortfall(f"index {e} is missing")
            comps[e] = self.comps[e].reduce_exponent(n)
        return HabiroTruncElement(self.ring, profile, comps, self.allowed)

    def with_allowed(self, allowed: Iterable[int]) -> "HabiroTruncElement":
        return HabiroTruncElement(self.ring, self.profile, self.comps, allowed)

    def reduction(self) -> QWittElement:
        """Reduction modulo Phi_e in every component (needs every e | m present)."""
        return QWittElement(self.ring, self.m, {e: c.reduce_exponent(1) for e, c in self.comps.items()})

    def render(self) -> str:
        return "{" + ", ".join(f"{e}: {c.render()}" for e, c in sorted(self.comps.items())) + "}"

    def __repr__(self):
        return f"HabiroTruncElement(m={self.m}, {self.render()})"


def from_polynomial(ring: NumberRing, g, profile: ModulusProfile) -> HabiroTruncElement:
    """Componentwise reduction of a global polynomial (Poly over Q or RPoly)."""
    g = g if isinstance(g, RPoly) else RPoly.from_poly(ring, g)
    return HabiroTruncElement.build(ring, profile, lambda e, n: g.reduce(e, n))


def habiro_frobenius(f: HabiroTruncElement, d: int, target: ModulusProfile | None = None) -> HabiroTruncElement:
    """Component e (d | e | dm) of the result is f_{e/d}(q^d) mod Phi_e^{n_e}.

    The default target copies the source exponents: n_e = n_{e/d}.
    """
    m2 = d * f.m
    if target is None:
        target = ModulusProfile(m2, {e: f.profile.at(e // d) for e in at_d_indices(m2, d)})
    if target.m != m2 or any(e % d for e in target.indices):
        raise LevelMismatch("target profile must sit at level dm on indices divisible by d")

    def comp(e, n):
        src = e // d
        if f.profile.at(src) < n:
            raise PrecisionShortfall(f"need exponent {n} at e={e}, source has {f.profile.at(src)} at {src}")
        return f[src].substitute(d, e, n)

    return HabiroTruncElement.build(f.ring, target, comp, f.allowed)


def lifted_norm(f: HabiroTruncElement, m2: int, target: ModulusProfile | None = None) -> HabiroTruncElement:
    """Component e | m2 is f_{(e,m)}(q^{e/(e,m)})^{m2/[e,m]}, by default modulo the mixed profile.

    A custom ``target`` may ask for any exponent not exceeding that of the
    source at (e, m); this is how compositions of norms are compared.
    """
    m = f.m
    if m2 % m:
        raise LevelMismatch(f"{m} does not divide {m2}")
    target = ModulusProfile.mixed(m, m2) if target is None else target
    if target.m != m2:
        raise LevelMismatch("target profile must sit at the new level")

    def comp(e, n):
        g = gcd(e, m)
        if f.profile.at(g) < n:
            raise PrecisionShortfall(f"need exponent {n} at e={e}, source has {f.profile.at(g)} at {g}")
        return f[g].substitute(e // g, e, n) ** (m2 // lcm(e, m))

    return HabiroTruncElement.build(f.ring, target, comp, f.allowed)


# twists -----------------------------------------------------------------------


class TwistElement:
    """Exponent-two residues x_e divisible by Phi_e, for d | e | m.

    ``d = 1`` is the Nygaard twist at level m; larger d gives the twist at d,
    whose denominators may involve the primes of :func:`at_d_support`.
    """

    __slots__ = ("ring", "m", "d", "comps", "allowed")

    def __init__(self, ring: NumberRing, m: int, d: int, comps: Mapping[int, ComponentElement], allowed=()):
        comps = dict(comps)
        if sorted(comps) != list(at_d_indices(m, d)):
            raise ValueError(f"twist components must be indexed by d | e | m (d={d}, m={m})")
        allowed = frozenset(allowed)
        for e, c in comps.items():
            if (c.ring, c.e, c.n) != (ring, e, 2):
                raise ValueError(f"twist component {e} must have exponent 2")
            if not c.is_divisible_by_phi():
                raise NotDivisible(e, f"Phi_{e}")
            c.check_denominators(allowed, f"twist component {e}")
        self.ring, self.m, self.d, self.comps, self.allowed = ring, m, d, comps, allowed

    @classmethod
    def zero(cls, ring: NumberRing, m: int, d: int = 1) -> "TwistElement":
        return cls(ring, m, d, {e: ComponentElement.zero(ring, e, 2) for e in at_d_indices(m, d)})

    @classmethod
    def from_global(cls, ring: NumberRing, h, m: int, d: int = 1, allowed=()) -> "TwistElement":
        """The class of (q^m - 1) * h for a global polynomial h."""
        if not isinstance(h, RPoly):
            h = RPoly.from_poly(ring, h) if isinstance(h, Poly) else RPoly.constant(ring, h)
        g = h * RPoly.from_poly(ring, Poly.monomial(m) - 1)
        return cls(ring, m, d, {e: g.reduce(e, 2) for e in at_d_indices(m, d)}, allowed)

    def __getitem__(self, e: int) -> ComponentElement:
        return self.comps[e]

    def _same(self, other):
        if not isinstance(other, TwistElement) or (other.ring, other.m, other.d) != (self.ring, self.m, self.d):
            raise LevelMismatch("twist elements at different levels or divisors")

    def __add__(self, other):
        self._same(other)
        return TwistElement(
            self.ring, self.m, self.d, {e: c + other[e] for e, c in self.comps.items()}, self.allowed | other.allowed
        )

    def __sub__(self, other):
        self._same(other)
        return TwistElement(
            self.ring, self.m, self.d, {e: c - other[e] for e, c in self.comps.items()}, self.allowed | other.allowed
        )

    def __neg__(self):
        return TwistElement(self.ring, self.m, self.d, {e: -c for e, c in self.comps.items()}, self.allowed)

    def scale(self, k) -> "TwistElement":
        return TwistElement(self.ring, self.m, self.d, {e: c * k for e, c in self.comps.items()}, self.allowed)

    def __eq__(self, other):
        if not isinstance(other, TwistElement):
            return NotImplemented
        return (self.ring, self.m, self.d) == (other.ring, other.m, other.d) and all(
            c == other[e] for e, c in self.comps.items()
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.values())

    def first_difference(self, other: "TwistElement") -> int | None:
        self._same(other)
        return next((e for e, c in sorted(self.comps.items()) if c != other[e]), None)

    def with_allowed(self, allowed) -> "TwistElement":
        return TwistElement(self.ring, self.m, self.d, self.comps, allowed)

    def render(self) -> str:
        return "{" + ", ".join(f"{e}: {c.render()}" for e, c in sorted(self.comps.items())) + "}"

    def __repr__(self):
        return f"TwistElement(m={self.m}, d={self.d}, {self.render()})"


def twist_profile(m: int, d: int = 1) -> ModulusProfile:
    return ModulusProfile(m, {e: 2 for e in at_d_indices(m, d)})


def exp_twist(x: TwistElement) -> HabiroTruncElement:
    """1 + x, a unit because x squares to zero."""
    prof = twist_profile(x.m, x.d)
    return HabiroTruncElement(x.ring, prof, {e: c + 1 for e, c in x.comps.items()}, x.allowed)


def log_unit(t: HabiroTruncElement, d: int = 1) -> TwistElement:
    """t - 1, for t congruent to 1 modulo every Phi_e."""
    comps = {}
    for e, c in t.comps.items():
        if c.n != 2:
            raise ValueError("logarithm is defined on exponent-two components")
        if not (c - 1).is_divisible_by_phi():
            raise NotCongruentToOne(e)
        comps[e] = c - 1
    return TwistElement(t.ring, t.m, d, comps, t.allowed)


def divide_twist_by_qint(t: TwistElement, k: int, m: int, allowed=None) -> TwistElement:
    """Divide the components d | e | m of a twist element by [k]_{q^m}, landing at level m.

    The input usually sits at level k*m and represents (q^{km} - 1) * h;
    the output represents (q^m - 1) * h.  Denominators of the quotient are
    checked against ``allowed`` (default: the at-d support of the output).
    """
    if t.m % m:
        raise LevelMismatch(f"{m} does not divide {t.m}")
    allowed = (frozenset(t.ring.primes) if t.d == 1 else at_d_support(t.ring, m, t.d)) if allowed is None else allowed
    divisor = RPoly.from_poly(t.ring, q_integer_at_power(k, m))
    comps = {}
    for e in at_d_indices(m, t.d):
        comps[e] = exact_divide(t[e], divisor.reduce(e, 2), allowed)
    return TwistElement(t.ring, m, t.d, comps, allowed if allowed is not ANY_PRIME else _support(comps))


def twist_transition(t: TwistElement, m: int, allowed=None) -> TwistElement:
    """Transition map from level m' to level m: restrict and divide by [m'/m]_{q^m}."""
    return divide_twist_by_qint(t, t.m // m, m, allowed)


def _support(comps) -> frozenset[int]:
    return frozenset().union(*(c.denominator_support() for c in comps.values()))


# c-coordinates --------------------------------------------------------------------


def c_coordinates(t: TwistElement) -> dict[int, ComponentElement]:
    """c_e = x_e / (q^m - 1) mod Phi_e, so that x = (q^m - 1) * c componentwise."""
    out = {}
    for e, c in t.comps.items():
        cofactor = (Poly.monomial(t.m) - 1).exact_div(cyclotomic_poly(e))
        quot = c.divide_by_phi()
        out[e] = exact_divide(quot, ComponentElement.from_poly(t.ring, cofactor, e, 1), ANY_PRIME)
    return out


def from_c_coordinates(ring: NumberRing, m: int, d: int, coords: Mapping[int, object], allowed=ANY_PRIME) -> TwistElement:
    """Inverse of :func:`c_coordinates`: x_e = (q^m - 1) * c_e mod Phi_e^2."""
    qm1 = RPoly.from_poly(ring, Poly.monomial(m) - 1)
    comps = {}
    for e in at_d_indices(m, d):
        c = coords[e]
        lift = c.lift() if isinstance(c, ComponentElement) else (
            c if isinstance(c, RPoly) else RPoly.from_poly(ring, c) if isinstance(c, Poly) else RPoly.constant(ring, c)
        )
        comps[e] = (lift * qm1).reduce(e, 2)
    support = _support(comps) if allowed is ANY_PRIME else allowed
    return TwistElement(ring, m, d, comps, support)
