"""Integer helpers: divisors, valuations, prime supports, CRT, Euler phi."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm, prod


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"divisors of non-positive integer {n}")
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of |n| (trial division; inputs here are small)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    return prod(p**(valuation(n, p) - 1) * (p - 1) for p in prime_factors(n)) if n > 1 else 1


def strip_primes(n: int, primes) -> int:
    """Remove every factor of the given primes from |n|."""
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def offending_prime(den: int, allowed) -> int | None:
    """Smallest prime dividing ``den`` outside ``allowed``, or None."""
    rest = strip_primes(den, allowed)
    if rest == 1:
        return None
    return prime_factors(rest)[0]


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    """Combine x = a1 mod m1 and x = a2 mod m2 for coprime moduli."""
    if gcd(m1, m2) != 1:
        raise ValueError("moduli must be coprime")
    t = ((a2 - a1) * pow(m1, -1, m2)) % m2
    m = m1 * m2
    return (a1 + m1 * t) % m, m


__all__ = [
    "crt_pair",
    "divisors",
    "euler_phi",
    "gcd",
    "lcm",
    "offending_prime",
    "prime_factors",
    "strip_primes",
    "valuation",
]
