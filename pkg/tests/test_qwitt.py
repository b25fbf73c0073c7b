"""q-Witt vectors in q-ghost coordinates: operators, norms, q-Dwork, Lambda-ring comparison."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclosyntomic.errors import LevelMismatch, NotInImage
from cyclosyntomic.exactalg import ComponentElement, Poly, cyclotomic_integers, divisors, integers, q_integer_at_power
from cyclosyntomic.qwitt import (
    LambdaZPresentation,
    QWittElement,
    at_d_indices,
    canonical_to_at_d,
    cyclotomic_frobenius,
    cyclotomic_norm,
    lambda_embed,
    lambda_embed_at_d,
    lambda_extract,
    lambda_frobenius_square,
    q_dwork_membership,
    q_frobenius,
    q_teichmuller,
    q_verschiebung,
    qw_one,
)
from oracles import brute_force_q_dwork
from strategies import elements, int_polys, rings, rpolys

Z = integers()
Z5 = cyclotomic_integers(5)
q = Poly.monomial(1)


def qwitt(ring, m):
    n = len(divisors(m))
    return st.lists(rpolys(ring, 3), min_size=n, max_size=n).map(
        lambda ps: QWittElement.build(ring, m, lambda e: ps[divisors(m).index(e)])
    )


def consts(ring, m, values):
    table = dict(zip(divisors(m), values))
    return QWittElement.build(ring, m, lambda e: table[e])


# ring structure --------------------------------------------------------------------


@given(st.tuples(rings, st.integers(1, 12)).flatmap(lambda rm: st.tuples(*(qwitt(*rm) for _ in range(3)))))
def test_ring_laws(abc):
    a, b, c = abc
    assert qw_one(a.ring, a.m) * a == a  # [TRIVIAL]
    assert a * (b + c) == a * b + a * c  # [TRIVIAL]
    assert a * b == b * a


@given(rings.flatmap(lambda R: st.tuples(elements(R), elements(R), st.integers(1, 12))))
def test_teichmuller_multiplicative(args):
    x, y, m = args
    assert q_teichmuller(x, m) * q_teichmuller(y, m) == q_teichmuller(x * y, m)


def test_teichmuller_components():
    x = Z5.gen + 2
    t = q_teichmuller(x, 6)
    # [DERIVED] component e is x^{6/e}
    for e, k in zip((1, 2, 3, 6), (6, 3, 2, 1)):
        assert t[e] == ComponentElement.const(Z5, e, 1, x**k)
    assert q_teichmuller(x, 1)[1] == ComponentElement.const(Z5, 1, 1, x)  # [TRIVIAL]


# Frobenius and Verschiebung -------------------------------------------------------------


def test_frobenius_restricts():
    c = QWittElement.build(Z, 4, lambda e: Poly((e, 1)))
    f = q_frobenius(c, 2)
    assert f.m == 2 and f[1] == c[1] and f[2] == c[2]  # [PAPER] restriction of indices
    assert q_frobenius(c, 4) == c  # [TRIVIAL]
    with pytest.raises(LevelMismatch):
        q_frobenius(c, 3)


@pytest.mark.parametrize("chain", [(a, b, c) for c in range(1, 13) for b in divisors(c) for a in divisors(b)])
def test_frobenius_composition(chain):
    # [DERIVED] index bookkeeping
    m, m1, m2 = chain
    c = QWittElement.build(Z, m2, lambda e: Poly((e, 2, -1)))
    assert q_frobenius(q_frobenius(c, m1), m) == q_frobenius(c, m)


def test_verschiebung_example():
    v = q_verschiebung(consts(Z, 1, [7]), 2)
    assert v == consts(Z, 2, [14, 0])  # [DERIVED]


def test_verschiebung_after_frobenius_example():
    # [DERIVED] [2]_q = 2 mod Phi_1 and 0 mod Phi_2
    c = QWittElement.build(Z, 2, lambda e: Poly((3, 1)))
    assert q_verschiebung(q_frobenius(c, 1), 2) == QWittElement.build(Z, 2, lambda e: Poly((8,)) if e == 1 else 0)


@given(st.tuples(rings, st.integers(1, 6), st.sampled_from([2, 3])).flatmap(
    lambda t: st.tuples(qwitt(t[0], t[1]), qwitt(t[0], t[1] * t[2]), st.just(t[2]))
))
def test_frobenius_verschiebung_relations(args):
    # [PAPER] F_d V_d = d and V_d F_d = [d]_{q^m}
    c, big, d = args
    m = c.m
    assert q_frobenius(q_verschiebung(c, d), m) == c * d
    qint = QWittElement.build(c.ring, d * m, lambda e: q_integer_at_power(d, m))
    assert q_verschiebung(q_frobenius(big, m), d) == big * qint


# cyclotomic norms -------------------------------------------------------------------------


def test_norm_example():
    c1, c2 = Poly((1, 2)), Poly((3, -1))
    c = QWittElement.build(Z, 2, lambda e: c1 if e == 1 else c2)
    n = cyclotomic_norm(c, 4)
    # [DERIVED] (c1^2, c2^2, c2(q^2)) at e = 1, 2, 4
    assert n[1] == ComponentElement.from_poly(Z, c1 * c1, 1)
    assert n[2] == ComponentElement.from_poly(Z, c2 * c2, 2)
    assert n[4] == ComponentElement.from_poly(Z, c2.substitute_power(2), 4)
    assert cyclotomic_norm(c, 2) == c  # [TRIVIAL]


@pytest.mark.parametrize("pair", [(m, m2) for m2 in range(1, 13) for m in divisors(m2)])
def test_norm_of_teichmuller(pair):
    # [PAPER] norms of Teichmueller elements are Teichmueller elements
    m, m2 = pair
    x = Z5.gen * 2 - 1
    assert cyclotomic_norm(q_teichmuller(x, m), m2) == q_teichmuller(x, m2)


@given(st.tuples(rings, st.sampled_from([(1, 2, 4), (1, 3, 6), (2, 4, 8), (1, 2, 6), (3, 6, 12)])).flatmap(
    lambda t: st.tuples(qwitt(t[0], t[1][0]), st.just(t[1]))
))
def test_norm_transitivity(args):
    c, (m, m1, m2) = args
    assert cyclotomic_norm(cyclotomic_norm(c, m1), m2) == cyclotomic_norm(c, m2)


@given(st.tuples(rings, st.sampled_from([(1, 2), (2, 4), (1, 3), (3, 6), (2, 6)])).flatmap(
    lambda t: st.tuples(qwitt(t[0], t[1][0]), qwitt(t[0], t[1][0]), st.just(t[1][1]))
))
def test_norm_is_multiplicative(args):
    a, b, m2 = args
    assert cyclotomic_norm(a * b, m2) == cyclotomic_norm(a, m2) * cyclotomic_norm(b, m2)


# cyclotomic Frobenius ------------------------------------------------------------------------


def test_cyclotomic_frobenius_example():
    # [DERIVED] the constant c_1 is unaffected by q -> q^2
    f = cyclotomic_frobenius(consts(Z, 1, [5]), 2)
    assert f.m == 2 and set(f.comps) == {2} and f[2] == ComponentElement.const(Z, 2, 1, 5)


@given(st.tuples(rings, st.integers(1, 6), st.sampled_from([2, 3])).flatmap(
    lambda t: st.tuples(qwitt(t[0], t[1]), qwitt(t[0], t[1]), st.just(t[2]))
))
def test_cyclotomic_frobenius_is_ring_map(args):
    a, b, d = args
    allowed = range(2, 40)
    fa, fb = cyclotomic_frobenius(a, d, allowed), cyclotomic_frobenius(b, d, allowed)
    assert cyclotomic_frobenius(a * b, d, allowed) == fa * fb
    assert cyclotomic_frobenius(a + b, d, allowed) == fa + fb


def test_at_d_indices():
    assert at_d_indices(4, 2) == (2, 4)  # [DERIVED]
    assert at_d_indices(12, 1) == divisors(12)  # [TRIVIAL]
    assert at_d_indices(4, 3) == ()  # [TRIVIAL] empty index set


@given(st.tuples(rings, st.integers(1, 12), st.sampled_from([2, 3, 4])).flatmap(
    lambda t: st.tuples(qwitt(t[0], t[1]), qwitt(t[0], t[1]), st.just(t[2]))
))
def test_canonical_to_at_d_is_ring_map(args):
    a, b, d = args
    allowed = range(2, 40)
    assert canonical_to_at_d(a * b, d, allowed) == canonical_to_at_d(a, d, allowed) * canonical_to_at_d(b, d, allowed)
    assert canonical_to_at_d(a, 1, allowed).comps.keys() == a.comps.keys()


# q-Dwork --------------------------------------------------------------------------------------


def test_dwork_examples():
    assert not q_dwork_membership(consts(Z, 2, [0, 1]))  # [DERIVED] confirmed by the brute-force oracle below
    assert brute_force_q_dwork(2, {1: [0], 2: [1]}) is False
    f = Poly((2, -1, 3))
    assert q_dwork_membership(QWittElement.build(Z, 6, lambda e: f))  # [PAPER] global polynomials
    assert q_dwork_membership(q_teichmuller(Z5.gen + 3, 12))  # [DERIVED] Teichmueller image


def test_dwork_witness():
    result = q_dwork_membership(consts(Z, 2, [0, 1]))
    assert result.detail["e"] == 1 and result.detail["p"] == 2


@pytest.mark.parametrize("m", [2, 3, 4])
def test_dwork_matches_brute_force_on_constants(m):
    # [DERIVED] exhaustive search over lifts with bounded degree
    ds = divisors(m)
    for vals in itertools.product(range(4), repeat=len(ds)):
        comps = {e: [v] for e, v in zip(ds, vals)}
        assert q_dwork_membership(consts(Z, m, vals)).member == brute_force_q_dwork(m, comps), vals


@pytest.mark.parametrize("m", [2, 3])
def test_dwork_matches_brute_force_on_linear_components(m):
    ds = divisors(m)
    choices = [(a, b) for a in range(-1, 2) for b in range(-1, 2)]
    for polys in itertools.product(choices, repeat=len(ds)):
        table = dict(zip(ds, polys))
        c = QWittElement.build(Z, m, lambda e: Poly(table[e]))
        reduced = {e: [int(v) for v in c[e].lift().num[:, 0]] for e in ds}
        assert q_dwork_membership(c).member == brute_force_q_dwork(m, reduced), polys


@given(st.tuples(rings, st.integers(1, 12), st.integers(0, 10**6)))
def test_dwork_closed_under_ring_operations(args):
    ring, m, seed = args
    import random

    from cyclosyntomic.suites import dwork_valid_qwitt

    rng = random.Random(seed)
    a, b = dwork_valid_qwitt(ring, m, rng), dwork_valid_qwitt(ring, m, rng)
    assert q_dwork_membership(a) and q_dwork_membership(b)
    assert q_dwork_membership(a * b) and q_dwork_membership(a - b)


@given(st.tuples(st.sampled_from([Z, Z5]), st.sampled_from([(1, 2), (1, 4), (2, 4), (3, 6), (2, 6), (1, 12), (4, 12)]), st.integers(0, 10**6)))
def test_norm_preserves_dwork(args):
    import random

    from cyclosyntomic.suites import dwork_valid_qwitt

    ring, (m, m2), seed = args
    c = dwork_valid_qwitt(ring, m, random.Random(seed))
    assert q_dwork_membership(cyclotomic_norm(c, m2))


# Lambda-ring comparison -----------------------------------------------------------------------


def test_lambda_example():
    c = lambda_embed(LambdaZPresentation(2, q), Z)
    # [DERIVED] q = 1 mod q - 1 and q = -1 mod q + 1
    assert c == consts(Z, 2, [1, -1])


def test_lambda_extract_rejects_non_integral():
    with pytest.raises(NotInImage):
        lambda_extract(consts(Z, 2, [0, 1]))


def test_lambda_requires_integers():
    with pytest.raises(ValueError):
        lambda_embed(LambdaZPresentation(2, q), Z5)


@given(int_polys(8), st.integers(1, 12))
def test_lambda_round_trip(f, m):
    pres = LambdaZPresentation(m, f)
    c = lambda_embed(pres, Z)
    assert lambda_extract(c) == pres  # [TRIVIAL] CRT round trip
    assert q_dwork_membership(c)  # [PAPER] the image is q-Dwork valid


@given(int_polys(6), int_polys(6), st.integers(1, 12))
def test_lambda_embed_is_ring_map(f, g, m):
    a, b = LambdaZPresentation(m, f), LambdaZPresentation(m, g)
    assert lambda_embed(LambdaZPresentation(m, f * g), Z) == lambda_embed(a, Z) * lambda_embed(b, Z)


@given(int_polys(6), st.integers(1, 6), st.sampled_from([2, 3]))
def test_lambda_frobenius_square(f, m, d):
    # [PAPER] the cyclotomic Frobenius is psi^d with q -> q^d
    pres = LambdaZPresentation(m, f)
    lhs = cyclotomic_frobenius(lambda_embed(pres, Z), d)
    assert lhs == lambda_embed_at_d(f.substitute_power(d), d * m, d, Z)
    assert lhs == canonical_to_at_d(lambda_embed(lambda_frobenius_square(pres, d), Z), d, lhs.allowed)
