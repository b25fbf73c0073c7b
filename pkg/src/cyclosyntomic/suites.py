"""Verification suites driven by a :class:`RunConfig`.

Each suite expands into independent cases (plain dicts of parameters) and a
runner that turns one case into a :class:`VerificationReport`.  Cases carry
their own seed, so results do not depend on scheduling.
"""

from __future__ import annotations

import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Callable

from . import polylog
from .cyclosyn import EmPair, can_minus_frob, cross_level_check, lift_independence, s_d
from .exactalg import (
    ComponentElement,
    NumberRing,
    Poly,
    RElement,
    RPoly,
    cyclotomic_integers,
    divisors,
    gaussian_integers,
    in_p_qminus1_power,
    integers,
    q_integer,
    q_integer_at_power,
)
from .habiro import (
    HabiroTruncElement,
    ModulusProfile,
    TwistElement,
    exp_twist,
    lifted_norm,
    log_unit,
)
from .config import RunConfig
from .qwitt import (
    LambdaZPresentation,
    QWittElement,
    cyclotomic_frobenius,
    cyclotomic_norm,
    lambda_embed,
    lambda_embed_at_d,
    lambda_extract,
    q_dwork_membership,
    q_frobenius,
    q_teichmuller,
    q_verschiebung,
)
from .report import FAIL, PASS, VerificationReport
from .witt import (
    GhostTuple,
    WittVector,
    dwork_check,
    from_ghost,
    ghost,
    witt_frobenius,
    witt_mul,
    witt_scale,
    witt_verschiebung,
)
from .errors import NotInImage

Case = dict


# random elements ------------------------------------------------------------------


def random_element(ring: NumberRing, rng: random.Random, bound: int = 3) -> RElement:
    return ring.element([rng.randint(-bound, bound) for _ in range(ring.degree)])


def random_rpoly(ring: NumberRing, rng: random.Random, degree: int, bound: int = 3) -> RPoly:
    return RPoly.from_coefficients([random_element(ring, rng, bound) for _ in range(degree + 1)])


def random_qwitt(ring: NumberRing, m: int, rng: random.Random) -> QWittElement:
    return QWittElement.build(ring, m, lambda e: random_rpoly(ring, rng, 4))


def random_unit_qwitt(ring: NumberRing, m: int, rng: random.Random) -> QWittElement:
    """Products of Teichmueller elements of small units and of q: invertible, multiplicative inputs."""
    units = [ring.const(-1)] + ([ring.gen] if ring.degree > 1 else [])
    x = ring.one
    for _ in range(3):
        x = x * rng.choice(units)
    return q_teichmuller(x, m) * QWittElement.build(ring, m, lambda e: Poly.monomial(rng.randint(0, 3)))


def dwork_valid_qwitt(ring: NumberRing, m: int, rng: random.Random) -> QWittElement:
    """Sums of products of q-Teichmueller lifts and global polynomials: in the q-ghost image."""
    acc = QWittElement.build(ring, m, lambda e: 0)
    for _ in range(2):
        f = Poly(tuple(rng.randint(-3, 3) for _ in range(4)))
        acc = acc + q_teichmuller(random_element(ring, rng), m) * QWittElement.build(ring, m, lambda e: f)
    return acc


def random_twist(ring: NumberRing, m: int, rng: random.Random, d: int = 1) -> TwistElement:
    return TwistElement.from_global(ring, random_rpoly(ring, rng, 3), m, d)


def _roots(config: RunConfig) -> list[polylog.RootOfUnity]:
    return [polylog.RootOfUnity(config.ring, g, a) for g, a in config.roots]


def _ring_by_name(name: str, config: RunConfig) -> NumberRing:
    return {
        "Z": integers,
        "Z[i][1/2]": gaussian_integers,
        "Z[zeta_5][1/5]": lambda: cyclotomic_integers(5),
        "config": lambda: config.ring,
    }[name]()


# individual checks ---------------------------------------------------------------------


def _fail(suite, case, **witness):
    return VerificationReport(suite, case, FAIL, witness or {"detail": "mismatch"})


def _pass(suite, case):
    return VerificationReport(suite, case, PASS)


def run_dwork(case: Case, config: RunConfig) -> VerificationReport:
    ring, m = _ring_by_name(case["ring"], config), case["m"]
    rng = random.Random(case["seed"])
    for i in range(case["samples"]):
        w = WittVector.of(ring, m, [random_element(ring, rng) for _ in divisors(m)])
        g = ghost(w)
        if i % 2:
            e = rng.choice(divisors(m))
            bump = random_element(ring, rng) * rng.choice([1, 2, 3, 4, 6])
            g = GhostTuple.from_map(ring, m, {k: v + bump if k == e else v for k, v in g.items()})
        predicted = dwork_check(g)
        try:
            from_ghost(g)
            actual = True
        except NotInImage:
            actual = False
        if predicted != actual:
            return _fail("dwork", case, sample=i, ghost=g.render(), dwork=predicted, integral=actual)
    return _pass("dwork", case)


def run_fv(case: Case, config: RunConfig) -> VerificationReport:
    m, d = case["m"], case["d"]
    ring = _ring_by_name(case["ring"], config)
    rng = random.Random(case["seed"])
    for i in range(case["samples"]):
        w = WittVector.of(ring, m, [random_element(ring, rng) for _ in divisors(m)])
        if witt_frobenius(witt_verschiebung(w, d), d) != witt_scale(w, d):
            return _fail("fv", case, sample=i, side="classical F_d V_d", witt=w.render())
        big = WittVector.of(ring, d * m, [random_element(ring, rng) for _ in divisors(d * m)])
        v_one = witt_verschiebung(WittVector.of(ring, m, [1] + [0] * (len(divisors(m)) - 1)), d)
        if witt_verschiebung(witt_frobenius(big, d), d) != witt_mul(v_one, big):
            return _fail("fv", case, sample=i, side="classical V_d F_d", witt=big.render())
        for d2 in (2, 3, 5):
            if gcd(d, d2) == 1 and d2 != d:
                w2 = WittVector.of(ring, d * m, [random_element(ring, rng) for _ in divisors(d * m)])
                lhs = witt_frobenius(witt_verschiebung(w2, d2), d)
                rhs = witt_verschiebung(witt_frobenius(w2, d), d2)
                if lhs != rhs:
                    return _fail("fv", case, sample=i, side=f"F_{d} V_{d2} commutation", witt=w2.render())
        c = random_qwitt(ring, m, rng)
        if q_frobenius(q_verschiebung(c, d), m) != c * d:
            return _fail("fv", case, sample=i, side="q F_d V_d", element=c.render())
        cbig = random_qwitt(ring, d * m, rng)
        qint = QWittElement.build(ring, d * m, lambda e: q_integer_at_power(d, m))
        if q_verschiebung(q_frobenius(cbig, m), d) != cbig * qint:
            return _fail("fv", case, sample=i, side="q V_d F_d", element=cbig.render())
    return _pass("fv", case)


def run_norms(case: Case, config: RunConfig) -> VerificationReport:
    ring = _ring_by_name(case["ring"], config)
    m, m1, m2 = case["chain"]
    rng = random.Random(case["seed"])
    for i in range(case["samples"]):
        c = random_unit_qwitt(ring, m, rng)
        if cyclotomic_norm(cyclotomic_norm(c, m1), m2) != cyclotomic_norm(c, m2):
            return _fail("norms", case, sample=i, law="transitivity", element=c.render())
        x = random_element(ring, rng)
        if cyclotomic_norm(q_teichmuller(x, m), m2) != q_teichmuller(x, m2):
            return _fail("norms", case, sample=i, law="teichmuller", x=x.render())
        v = dwork_valid_qwitt(ring, m, rng)
        if not q_dwork_membership(v).member:
            return _fail("norms", case, sample=i, law="membership of input", element=v.render())
        if not q_dwork_membership(cyclotomic_norm(v, m2)).member:
            return _fail("norms", case, sample=i, law="norm preserves membership", element=v.render())
    return _pass("norms", case)


def run_ideal(case: Case, config: RunConfig) -> VerificationReport:
    p, r = case["p"], case["r"]
    if not in_p_qminus1_power(Poly.monomial(p**r) - 1, p, r):
        return _fail("ideal", case, poly=f"q^{p**r} - 1")
    if not in_p_qminus1_power(q_integer(p**r), p, r):
        return _fail("ideal", case, poly=f"[{p**r}]_q")
    if r == 3 and p == 2 and in_p_qminus1_power(Poly.monomial(2) - 1, 2, 3):
        return _fail("ideal", case, poly="q^2 - 1 (negative control accepted)")
    return _pass("ideal", case)


def run_explog(case: Case, config: RunConfig) -> VerificationReport:
    ring, (m, m2) = config.ring, case["pair"]
    rng = random.Random(case["seed"])
    k = m2 // m
    for i in range(case["samples"]):
        x, y = random_twist(ring, m, rng), random_twist(ring, m, rng)
        if log_unit(exp_twist(x)) != x:
            return _fail("explog", case, sample=i, law="log exp", x=x.render())
        t = exp_twist(y)
        if exp_twist(log_unit(t)) != t:
            return _fail("explog", case, sample=i, law="exp log", x=y.render())
        if log_unit(exp_twist(x) * exp_twist(y)) != x + y:
            return _fail("explog", case, sample=i, law="log of product", x=x.render())
        lhs = lifted_norm(exp_twist(x), m2)
        # restrict x to e | m, multiply by m2/m, exponentiate; indices e not dividing m carry 1
        rhs = HabiroTruncElement.build(
            ring,
            ModulusProfile.mixed(m, m2),
            lambda e, n: x[e] * k + 1 if m % e == 0 else ComponentElement.const(ring, e, n, 1),
        )
        if lhs != rhs:
            return _fail("explog", case, sample=i, law="exp diagram", x=x.render())
    return _pass("explog", case)


def _valid_pair(config: RunConfig, m: int, rng: random.Random) -> EmPair:
    """A unit of R with a lift of its norm, perturbed by a random exponential."""
    roots = _roots(config)
    wobble = exp_twist(random_twist(config.ring, m, rng))
    if roots and rng.random() < 0.8:
        zeta = rng.choice(roots)
        if rng.random() < 0.5:
            return EmPair(polylog.canonical_unit_lift(zeta, m) * wobble, 1 - zeta.value)
        return EmPair(polylog.monomial_lift(zeta, m) * wobble, zeta.value)
    return EmPair(wobble, config.ring.one)


def run_homotopy(case: Case, config: RunConfig) -> VerificationReport:
    m, d = case["m"], case["d"]
    rng = random.Random(case["seed"])
    for i in range(case["samples"]):
        pair = _valid_pair(config, m, rng)
        x = random_twist(config.ring, m, rng)
        moved = EmPair(exp_twist(x) * pair.y, pair.z)
        lhs = s_d(moved, d) - s_d(pair, d)
        rhs = can_minus_frob(x, d)
        bad = lhs.first_difference(rhs)
        if bad is not None:
            return _fail("homotopy", case, sample=i, e=bad, lhs=lhs[bad].rational_rows(), rhs=rhs[bad].rational_rows())
    return _pass("homotopy", case)


def run_key_identity(case: Case, config: RunConfig) -> VerificationReport:
    d, m, e = case["d"], case["m"], case["e"]
    if not polylog.key_identity_check(d, m, e):
        return _fail("key-identity", case, e=e, detail="identity fails")
    if polylog.key_identity_check(d, m, e, negate=True):
        return _fail("key-identity", case, e=e, detail="sign-flipped control passes")
    return _pass("key-identity", case)


def run_main_theorem(case: Case, config: RunConfig) -> VerificationReport:
    zeta = polylog.RootOfUnity(config.ring, case["order"], case["exponent"])
    rep = polylog.main_theorem_check(zeta, case["d"], case["m"])
    return VerificationReport("main-theorem", case, rep.status, rep.witness, rep.millis)


def run_cross_level(case: Case, config: RunConfig) -> VerificationReport:
    zeta = polylog.RootOfUnity(config.ring, case["order"], case["exponent"])
    u = 1 - zeta.value
    if "pair" in case:
        m, m2 = case["pair"]
        ok = cross_level_check(u, m, m2, case["d"], polylog.canonical_unit_lift(zeta, m2), polylog.canonical_unit_lift(zeta, m))
        return _pass("cross-level", case) if ok else _fail("cross-level", case, levels=[m, m2], d=case["d"])
    m, d = case["m"], case["d"]
    rng = random.Random(case["seed"])
    base = polylog.canonical_unit_lift(zeta, m)
    for i in range(case["samples"]):
        other = exp_twist(random_twist(config.ring, m, rng)) * base
        if not lift_independence(u, m, d, base, other):
            return _fail("cross-level", case, sample=i, detail="lift independence")
    return _pass("cross-level", case)


def run_lambda(case: Case, config: RunConfig) -> VerificationReport:
    m, d = case["m"], case["d"]
    Z = integers()
    rng = random.Random(case["seed"])
    for i in range(case["samples"]):
        f = Poly(tuple(rng.randint(-5, 5) for _ in range(rng.randint(0, 2 * m))))
        pres = LambdaZPresentation(m, f)
        c = lambda_embed(pres, Z)
        if lambda_extract(c) != pres:
            return _fail("lambda", case, sample=i, law="round trip", poly=f.render())
        if not q_dwork_membership(c).member:
            return _fail("lambda", case, sample=i, law="membership", poly=f.render())
        if cyclotomic_frobenius(c, d) != lambda_embed_at_d(f.substitute_power(d), d * m, d, Z):
            return _fail("lambda", case, sample=i, law="Frobenius square", poly=f.render())
    return _pass("lambda", case)


def _symmetry(check):
    def run(case: Case, config: RunConfig) -> VerificationReport:
        zeta = polylog.RootOfUnity(config.ring, case["order"], case["exponent"])
        rep = check(zeta, case["d"], case["m"])
        return VerificationReport(rep.suite, case, rep.status, rep.witness, rep.millis)

    return run


# suite table --------------------------------------------------------------------------------------


def _seeded(config, name, cases):
    out = []
    for i, c in enumerate(cases):
        c = dict(c)
        c.setdefault("seed", zlib.crc32(f"{config.seed}:{name}:{i}".encode()))
        out.append(c)
    return out


def _cases_dwork(config):
    rings = ["Z", "Z[i][1/2]", "Z[zeta_5][1/5]"]
    return [{"ring": r, "m": m, "samples": config.samples} for r in rings for m in range(1, 13)]


def _cases_fv(config):
    return [{"ring": "Z", "m": m, "d": d, "samples": 3} for m in range(1, 7) for d in (2, 3)] + [
        {"ring": "config", "m": m, "d": d, "samples": 1} for m in range(1, 7) for d in (2, 3)
    ]


def _chains(limit=12):
    return [(a, b, c) for c in range(1, limit + 1) for b in divisors(c) for a in divisors(b)]


def _cases_norms(config):
    out = [{"ring": "Z", "chain": ch, "samples": 2} for ch in _chains()]
    out += [{"ring": "Z[zeta_5][1/5]", "chain": ch, "samples": 1} for ch in _chains() if ch[2] <= 6 or ch[0] == ch[1]]
    return out


def _cases_ideal(config):
    return [{"p": p, "r": r} for p in (2, 3, 5) for r in range(0, 5)]


def _level_pairs(levels, limit=12):
    return [(m, m2) for m2 in levels for m in levels if m2 % m == 0 and m2 <= limit]


def _cases_explog(config):
    return [{"pair": p, "samples": 2} for p in _level_pairs(config.levels)]


def _cases_homotopy(config):
    grid = [(m, d) for m in (2, 3, 4, 6) if gcd(m, config.ring.N) == 1 for d in (2, 3)]
    per = max(1, -(-100 // len(grid))) if grid else 0
    return [{"m": m, "d": d, "samples": per} for m, d in grid]


def _cases_key(config):
    return [
        {"d": d, "m": m, "e": e}
        for d in (2, 3, 4)
        for m in (2, 3, 4, 6, 8, 12)
        for e in divisors(m)
        if e % d == 0
    ]


def _root_grid(config):
    return [
        {"order": g, "exponent": a, "m": m, "d": d}
        for g, a in config.roots
        for m in config.levels
        if m > 1
        for d in config.divisors
    ]


def _cases_cross(config):
    out = [
        {"order": g, "exponent": a, "pair": p, "d": d}
        for g, a in config.roots
        for p in _level_pairs(config.levels)
        if p[0] != p[1] and p[0] > 1
        for d in config.divisors
    ]
    grid = [(m, d) for m in (2, 3, 4, 6) if gcd(m, config.ring.N) == 1 for d in (2, 3)]
    per = max(1, -(-100 // len(grid))) if grid else 0
    out += [{"order": g, "exponent": a, "m": m, "d": d, "samples": per} for g, a in config.roots[:1] for m, d in grid]
    return out


def _cases_lambda(config):
    return [{"m": m, "d": d, "samples": 4} for m in range(1, 13) for d in (2, 3)]


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int
    cases: Callable[[RunConfig], list]
    run: Callable[[Case, RunConfig], VerificationReport]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("dwork", 1, _cases_dwork, run_dwork),
        Suite("fv", 2, _cases_fv, run_fv),
        Suite("norms", 3, _cases_norms, run_norms),
        Suite("ideal", 4, _cases_ideal, run_ideal),
        Suite("explog", 5, _cases_explog, run_explog),
        Suite("homotopy", 6, _cases_homotopy, run_homotopy),
        Suite("key-identity", 7, _cases_key, run_key_identity),
        Suite("main-theorem", 8, _root_grid, run_main_theorem),
        Suite("cross-level", 9, _cases_cross, run_cross_level),
        Suite("lambda", 10, _cases_lambda, run_lambda),
        Suite("li1-symmetry", 11, _root_grid, _symmetry(polylog.symmetry_cocycle_check)),
        Suite("li1-symmetry-class", 11, _root_grid, _symmetry(polylog.symmetry_class_check)),
        Suite("root-vanishing", 11, _root_grid, _symmetry(polylog.root_vanishing_check)),
    ]
}


def _run_one(args) -> VerificationReport:
    name, case, config = args
    start = time.perf_counter()
    rep = SUITES[name].run(case, config)
    rep.millis = int((time.perf_counter() - start) * 1000)
    return rep


def run_suite(name: str, config: RunConfig, pool: ProcessPoolExecutor | None = None) -> VerificationReport:
    """Run every case of a suite and fold the results into one report."""
    suite = SUITES[name]
    cases = _seeded(config, name, suite.cases(config))
    start = time.perf_counter()
    jobs = [(name, c, config) for c in cases]
    results = list(pool.map(_run_one, jobs)) if pool else [_run_one(j) for j in jobs]
    millis = int((time.perf_counter() - start) * 1000)
    params = {
        "criterion": suite.criterion,
        "cases": len(cases),
        "ring": config.ring.name(),
        "levels": list(config.levels),
        "divisors": list(config.divisors),
        "roots": [list(r) for r in config.roots],
        "seed": config.seed,
    }
    failed = [r for r in results if not r.passed]
    if not failed:
        return VerificationReport(name, params, PASS, None, millis, checks=len(cases))
    first = failed[0]
    witness = {"case": first.params, "failed_cases": len(failed), **(first.witness or {})}
    return VerificationReport(name, params, FAIL, witness, millis, checks=len(cases))


def run_suites(names, config: RunConfig) -> list[VerificationReport]:
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return [run_suite(n, config, pool) for n in names]
    return [run_suite(n, config) for n in names]
