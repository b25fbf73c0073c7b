"""Independent reference computations used by the tests.

Nothing here imports the arithmetic kernels of the package; each oracle
works in a different representation:

* :class:`Dual` is F_l[eps]/eps^2.  Sending x to a primitive root of unity
  mod l and q to eta + eps (eta a primitive e-th root mod l) is a ring map
  R[q]/Phi_e(q)^2 -> F_l[eps], so componentwise identities can be checked
  with plain modular integers.
* :func:`brute_force_q_dwork` searches Frobenius-congruent lifts directly.
* :func:`cyclotomic_by_roots` expands prod (q - w) over complex roots.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def primes_congruent_one(modulus: int, count: int, start: int = 1000) -> list[int]:
    out, k = [], start // modulus + 1
    while len(out) < count:
        cand = k * modulus + 1
        if cand > 2 and all(cand % p for p in range(2, int(cand**0.5) + 1)):
            out.append(cand)
        k += 1
    return out


def primitive_root_of_order(order: int, ell: int) -> int:
    """Some element of exact multiplicative order ``order`` mod the prime ell."""
    assert (ell - 1) % order == 0
    factors = [p for p in range(2, order + 1) if order % p == 0 and all(p % r for r in range(2, p))]
    for g in range(2, ell):
        w = pow(g, (ell - 1) // order, ell)
        if all(pow(w, order // p, ell) != 1 for p in factors):
            return w
    raise AssertionError("no root found")


@dataclass(frozen=True)
class Dual:
    """a + b*eps over F_l."""

    a: int
    b: int
    ell: int

    def _c(self, o):
        return o if isinstance(o, Dual) else Dual(o % self.ell, 0, self.ell)

    def __add__(self, o):
        o = self._c(o)
        return Dual((self.a + o.a) % self.ell, (self.b + o.b) % self.ell, self.ell)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a % self.ell, -self.b % self.ell, self.ell)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return Dual(self.a * o.a % self.ell, (self.a * o.b + self.b * o.a) % self.ell, self.ell)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        acc = Dual(1, 0, self.ell)
        for _ in range(k):
            acc = acc * self
        return acc

    def inverse(self):
        inv = pow(self.a, -1, self.ell)
        return Dual(inv, -self.b * inv * inv % self.ell, self.ell)

    def __truediv__(self, o):
        return self * self._c(o).inverse()


@dataclass(frozen=True)
class DualPoint:
    """A ring map R[q]/Phi_e^2 -> F_l[eps] for R = Z[x]/(Phi_G)[1/N] or Z[1/N]."""

    ell: int
    omega: int  # image of x
    eta: int  # primitive e-th root of unity mod l
    conductor: int  # G (1 for Z)

    @classmethod
    def make(cls, conductor: int, e: int, ell: int) -> "DualPoint":
        omega = primitive_root_of_order(conductor, ell) if conductor > 1 else 0
        return cls(ell, omega, primitive_root_of_order(e, ell), conductor)

    @property
    def q(self) -> Dual:
        return Dual(self.eta, 1, self.ell)

    def scalar(self, coeffs, den: int = 1) -> int:
        v = sum(int(c) * pow(self.omega, j, self.ell) for j, c in enumerate(coeffs)) if self.conductor > 1 else int(coeffs[0])
        return v * pow(den, -1, self.ell) % self.ell

    def component(self, comp) -> Dual:
        """Image of a ComponentElement (rows = x-coefficients of q^i)."""
        acc = Dual(0, 0, self.ell)
        qi = Dual(1, 0, self.ell)
        for row in comp.num:
            acc = acc + qi * self.scalar([int(v) for v in row])
            qi = qi * self.q
        return acc * pow(comp.den, -1, self.ell)

    def root_power(self, order: int, exponent: int, e: int) -> int:
        """Image of zeta_order^(exponent / e)."""
        zeta = pow(self.omega, (self.conductor // order) * exponent, self.ell) if order > 2 else self.ell - 1
        return pow(zeta, pow(e, -1, order), self.ell)


def qint(k: int, q: Dual) -> Dual:
    acc = Dual(0, 0, q.ell)
    for j in range(k):
        acc = acc + q**j
    return acc


def li1_component(t: int, d: int, m: int, point: DualPoint) -> Dual:
    """[m]_q * sum_{0<k<m, d not | k} t^k/[k]_q / (1 - t^m), evaluated at q = eta + eps."""
    q, ell = point.q, point.ell
    s = Dual(0, 0, ell)
    for k in range(1, m):
        if k % d:
            s = s + Dual(pow(t, k, ell), 0, ell) / qint(k, q)
    return qint(m, q) * s / (1 - Dual(pow(t, m, ell), 0, ell))


def chern_component(t: int, d: int, m: int, point: DualPoint) -> Dual:
    """(norm / Frobenius - 1) / [d]_{q^m} of prod_j (1 - q^j [zeta]) at an index e | m."""
    q, ell = point.q, point.ell
    one = Dual(1, 0, ell)
    norm, frob = one, one
    for j in range(m):
        norm = norm * (one - q**j * t) ** d
        frob = frob * (one - q ** (j * d) * pow(t, d, ell))
    return (norm / frob - 1) / qint(d, q**m)


# q-Dwork by exhaustive search --------------------------------------------------------


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polyadd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def cyclotomic_int(e: int) -> list[int]:
    return [int(round(c.real)) for c in cyclotomic_by_roots(e)]


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def brute_force_q_dwork(m: int, comps: dict[int, list[int]], degree: int = 2) -> bool:
    """Search lifts c_e + Phi_e * h_e (deg h_e < degree, coefficients mod M) over Z.

    The lifts must satisfy lift_e = lift_{pe} mod p^{v_p(m/e)} whenever pe | m.
    Bounded search: a True answer is a certificate, a False answer is
    exhaustive only inside the search box.
    """
    divs = [e for e in range(1, m + 1) if m % e == 0]
    conditions = []
    for e in divs:
        for p in range(2, m + 1):
            if all(p % r for r in range(2, p)) and m % (p * e) == 0:
                conditions.append((e, p * e, p ** _valuation(m // e, p)))
    if not conditions:
        return True
    M = 1
    for *_, mod in conditions:
        M = M * mod // gcd(M, mod)
    boxes = list(itertools.product(range(M), repeat=degree))
    phis = {e: cyclotomic_int(e) for e in divs}

    def lift(e, h):
        return _polyadd(comps[e], _polymul(phis[e], list(h)))

    def agree(a, b, mod):
        d = _polyadd(a, [-v for v in b])
        return all(v % mod == 0 for v in d)

    # depth-first over divisors, checking each condition once both ends are chosen
    order = sorted(divs, reverse=True)
    chosen: dict[int, list[int]] = {}

    def search(i):
        if i == len(order):
            return True
        e = order[i]
        for h in boxes:
            cand = lift(e, h)
            if all(agree(cand, chosen[b], mod) for a, b, mod in conditions if a == e and b in chosen):
                chosen[e] = cand
                if search(i + 1):
                    return True
                del chosen[e]
        return False

    return search(0)


# complex roots ------------------------------------------------------------------------


def cyclotomic_by_roots(e: int) -> list[complex]:
    """Coefficients (lowest first) of prod over primitive e-th roots w of (q - w)."""
    coeffs = [1 + 0j]
    for k in range(1, e + 1):
        if gcd(k, e) == 1:
            w = cmath.exp(2j * cmath.pi * k / e)
            coeffs = [0j] + coeffs
            for i in range(len(coeffs) - 1):
                coeffs[i] -= w * coeffs[i + 1]
    return coeffs


def resultant_by_roots(e: int, f: int) -> int:
    """Res(Phi_e, Phi_f) as the product of differences of primitive roots."""
    acc = 1 + 0j
    for a in range(1, e + 1):
        if gcd(a, e) == 1:
            for b in range(1, f + 1):
                if gcd(b, f) == 1:
                    acc *= cmath.exp(2j * cmath.pi * a / e) - cmath.exp(2j * cmath.pi * b / f)
    return int(round(acc.real))


def witt_ghost_naive(m: int, xs: dict[int, Fraction]) -> dict[int, Fraction]:
    """gh_e = sum_{k | e} k x_k^{e/k}."""
    return {e: sum(k * xs[k] ** (e // k) for k in xs if e % k == 0) for e in xs if m % e == 0}
