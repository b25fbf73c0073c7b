"""Cyclotomic polynomials, q-integers and the (p, q-1)-adic filtration."""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .arith import divisors, prime_factors
from .poly import Poly, resultant


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> Poly:
    """Phi_e(q), obtained by dividing q^e - 1 by the lower cyclotomic factors."""
    if e < 1:
        raise ValueError(f"cyclotomic index must be positive, got {e}")
    num = Poly.monomial(e) - 1
    for d in divisors(e)[:-1]:
        num = num.exact_div(cyclotomic_poly(d))
    return num


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int, n: int = 1) -> tuple[int, ...]:
    """Integer coefficients of Phi_e(q)**n (lowest first)."""
    return (cyclotomic_poly(e) ** n).int_coeffs()


@lru_cache(maxsize=None)
def q_integer(k: int) -> Poly:
    """[k]_q = 1 + q + ... + q^(k-1); [0]_q = 0."""
    if k < 0:
        raise ValueError("q-integers are indexed by nonnegative integers")
    return Poly((1,) * k)


def q_integer_at_power(k: int, m: int) -> Poly:
    """[k]_{q^m}."""
    return q_integer(k).substitute_power(m) if k else Poly(())


def in_p_qminus1_power(g: Poly, p: int, r: int) -> bool:
    """Membership of an integer polynomial in the ideal (p, q-1)^r of Z[q].

    Writing g = sum a_i (q-1)^i, membership means p^(r-i) | a_i for i < r;
    only those Taylor coefficients at q = 1 are computed.
    """
    if not g.is_integral():
        raise ValueError("in_p_qminus1_power expects integer coefficients")
    coeffs = g.int_coeffs()
    for i in range(r):
        a = sum(c * comb(k, i) for k, c in enumerate(coeffs) if c and k >= i)
        if a % p ** (r - i):
            return False
    return True


@lru_cache(maxsize=None)
def cyclotomic_resultant_primes(e: int, e2: int) -> tuple[int, ...]:
    """Primes dividing resultant(Phi_e, Phi_e2); requires e != e2."""
    if e == e2:
        raise ValueError("resultant of a cyclotomic polynomial with itself vanishes")
    res = resultant(cyclotomic_poly(e), cyclotomic_poly(e2))
    return prime_factors(int(res))
