"""Roots of unity, the first q-polylogarithm and its comparison with the Chern cocycle."""

from math import lcm

import pytest

from cyclosyntomic import polylog
from cyclosyntomic.cyclosyn import chern_cocycle
from cyclosyntomic.errors import RootUnavailable
from cyclosyntomic.exactalg import (
    ANY_PRIME,
    ComponentElement,
    NumberRing,
    component_invert,
    cyclotomic_integers,
    divisors,
    integers,
    q_integer,
)
from cyclosyntomic.habiro import twist_transition
from cyclosyntomic.polylog import RationalFunctionInT, RootOfUnity
from oracles import DualPoint, chern_component, li1_component, primes_congruent_one

Z = integers()
Z5 = cyclotomic_integers(5)
Z7 = cyclotomic_integers(7)
Z_HALF = NumberRing((0, 1), 2, "Z[1/2]")
ZETA5 = RootOfUnity(Z5, 5, 1)

MAIN_GRID = [(m, d) for m in (2, 3, 4, 6, 12) for d in (2, 3, 4, 6)]


# roots of unity ------------------------------------------------------------------------------


def test_zeta_class_examples():
    c = polylog.zeta_class(ZETA5, 2, n=1)
    # [DERIVED] 2 * 3 = 1 mod 5, so the square root of zeta_5 is zeta_5^3
    assert c[1] == ComponentElement.const(Z5, 1, 1, ZETA5.value)
    assert c[2] == ComponentElement.const(Z5, 2, 1, ZETA5.value**3)
    assert polylog.zeta_class(ZETA5, 1, n=1)[1] == ComponentElement.const(Z5, 1, 1, ZETA5.value)  # [TRIVIAL]


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 12])
def test_zeta_class_frobenius_compatibility(m):
    # [DERIVED] (zeta^{1/pe})^p = zeta^{1/e}
    for e in divisors(m):
        for p in (2, 3):
            if m % (p * e) == 0:
                assert ZETA5.root(p * e) ** p == ZETA5.root(e)


def test_root_errors():
    with pytest.raises(RootUnavailable):
        ZETA5.root(5)
    with pytest.raises(ValueError):
        RootOfUnity(Z, 2, 1)  # -1 needs 1/2
    with pytest.raises(ValueError):
        RootOfUnity(Z5, 5, 5)
    assert RootOfUnity(Z_HALF, 2, 1).value == -1


def test_inverse_root():
    inv = ZETA5.inverse()
    assert inv.value * ZETA5.value == 1
    assert inv.label() == "zeta_5^4"


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 12])
def test_canonical_lift_reduction_and_unit(m):
    y = polylog.canonical_unit_lift(ZETA5, m)
    for e in divisors(m):
        # [PAPER] the reduction at e is (1 - zeta)^{m/e}
        assert y[e].reduce_exponent(1) == ComponentElement.const(Z5, e, 1, (1 - ZETA5.value) ** (m // e))
        # [PAPER] a unit modulo Phi_e^2 without new denominators
        inv = component_invert(y[e], ())
        assert y[e] * inv == 1


# the formal series ------------------------------------------------------------------------------


def _series(e, coeffs, m):
    """sum coeffs[k] T^k / (1 - T^m) with component coefficients."""
    num = tuple(c if isinstance(c, ComponentElement) else ComponentElement.const(Z, e, 2, c) for c in coeffs)
    den = [ComponentElement.const(Z, e, 2, 0)] * (m + 1)
    den[0] = den[0] + 1
    den[m] = den[m] - 1
    return RationalFunctionInT(num, tuple(den))


def test_li1_formal_examples():
    # [DERIVED] single term k = 1 with [1]_q = 1
    f = polylog.li1_formal(2, 2)
    assert set(f) == {2}
    assert f[2].same_as(_series(2, [0, 1], 2))
    # [DERIVED] terms k = 1 and k = 3
    f = polylog.li1_formal(2, 4)
    assert set(f) == {2, 4}
    for e in (2, 4):
        inv3 = component_invert(ComponentElement.from_poly(Z, q_integer(3), e, 2), ANY_PRIME)
        assert f[e].same_as(_series(e, [0, 1, 0, inv3], 4))
        assert not f[e].same_as(_series(e, [0, 1, 0, 1], 4))


def test_li1_formal_needs_d_at_least_two():
    with pytest.raises(ValueError):
        polylog.li1_formal(1, 4)


@pytest.mark.parametrize("m, m2, d", [(2, 4, 2), (2, 6, 2), (3, 6, 3), (4, 12, 2), (6, 12, 2), (6, 12, 3), (3, 12, 3), (4, 8, 4)])
def test_li1_class_level_transition(m, m2, d):
    # [PAPER] compatible between levels
    high = polylog.li1_class(ZETA5, d, m2)
    assert twist_transition(high, m, ANY_PRIME) == polylog.li1_class(ZETA5, d, m)


def _oracle_points(conductor, e, count=2):
    return [DualPoint.make(conductor, e, ell) for ell in primes_congruent_one(lcm(conductor, e), count)]


@pytest.mark.parametrize("ring, order", [(Z5, 5), (Z7, 7)])
@pytest.mark.parametrize("m, d", MAIN_GRID)
def test_li1_matches_finite_sum_oracle(ring, order, m, d):
    # [DERIVED] the defining finite sum evaluated in F_l[eps]
    zeta = RootOfUnity(ring, order, 1)
    li = polylog.li1_class(zeta, d, m)
    for e, comp in li.comps.items():
        for point in _oracle_points(order, e):
            t = point.root_power(order, 1, e)
            assert point.component(comp) == li1_component(t, d, m, point)


@pytest.mark.parametrize("ring, order", [(Z5, 5), (Z7, 7)])
@pytest.mark.parametrize("m, d", MAIN_GRID)
def test_chern_matches_product_oracle(ring, order, m, d):
    # [DERIVED] norm / Frobenius of prod (1 - q^j [zeta]) in F_l[eps], independent of the Habiro code
    zeta = RootOfUnity(ring, order, 1)
    c = chern_cocycle(1 - zeta.value, m, d, polylog.canonical_unit_lift(zeta, m))
    for e, comp in c.comps.items():
        for point in _oracle_points(order, e):
            t = point.root_power(order, 1, e)
            oracle = chern_component(t, d, m, point)
            assert point.component(comp) == oracle
            # the oracles alone already see the sign relation
            assert oracle == -li1_component(t, d, m, point)


def test_li1_over_z_half():
    minus_one = RootOfUnity(Z_HALF, 2, 1)
    li = polylog.li1_class(minus_one, 3, 3)
    for e, comp in li.comps.items():
        for point in _oracle_points(1, e):
            t = point.root_power(2, 1, e)
            assert point.component(comp) == li1_component(t, 3, 3, point)
    assert polylog.main_theorem_check(minus_one, 3, 3).passed


# key identity -------------------------------------------------------------------------------------


@pytest.mark.parametrize("d, m, e", [(2, 2, 2), (3, 3, 3)])
def test_key_identity_examples(d, m, e):
    assert polylog.key_identity_check(d, m, e)  # [PAPER]
    assert not polylog.key_identity_check(d, m, e, negate=True)  # [DERIVED] negative control


def test_key_identity_argument_checks():
    with pytest.raises(ValueError):
        polylog.key_identity_check(2, 6, 3)


# main comparison ------------------------------------------------------------------------------------


@pytest.mark.parametrize("m, d", [(2, 2), (4, 2)])
def test_main_theorem_examples(m, d):
    assert polylog.main_theorem_check(ZETA5, d, m).passed  # [PAPER]


def test_main_theorem_empty_index_set():
    rep = polylog.main_theorem_check(ZETA5, 5, 4)  # [TRIVIAL] no d | e | m
    assert rep.passed
    assert polylog.li1_class(ZETA5, 5, 4).comps == {}


def test_main_theorem_reports_witness_on_fault(monkeypatch):
    real = polylog.li1_class
    monkeypatch.setattr(polylog, "li1_class", lambda z, d, m: -real(z, d, m))
    rep = polylog.main_theorem_check(ZETA5, 2, 2)
    assert not rep.passed
    assert rep.witness["e"] == 2
    assert rep.witness["lhs"] != rep.witness["rhs"]


# symmetry and vanishing --------------------------------------------------------------------------------


@pytest.mark.parametrize("m, d", MAIN_GRID)
def test_symmetry_holds_in_cohomology(m, d):
    assert polylog.symmetry_class_check(ZETA5, d, m).passed


@pytest.mark.parametrize("m, d", MAIN_GRID)
def test_root_of_unity_cocycles_vanish(m, d):
    assert polylog.root_vanishing_check(ZETA5, d, m).passed


def test_literal_symmetry_fails_by_a_sign_at_level_two():
    # The cocycles at zeta and zeta^{-1} are not equal on the nose: at m = d = 2
    # they are negatives of each other (modulo [2]_q one has Li(T^{-1}) = Li(qT)).
    # Their difference is a coboundary, checked above.
    a = polylog.li1_class(ZETA5, 2, 2)
    b = polylog.li1_class(ZETA5.inverse(), 2, 2)
    assert a != b
    assert a == -b
    rep = polylog.symmetry_cocycle_check(ZETA5, 2, 2)
    assert not rep.passed and rep.witness["e"] == 2
