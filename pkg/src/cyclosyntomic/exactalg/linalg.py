"""Small exact linear solvers (rational and modulo a prime)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_rational(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square system exactly; None if the matrix is singular."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        pivot_row = [v * inv for v in a[col]]
        a[col] = pivot_row
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [v - c * w for v, w in zip(a[r], pivot_row)]
    return [a[i][n] for i in range(n)]


def solve_mod_prime(matrix: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """Solve a square system over F_p; None if singular."""
    n = len(matrix)
    a = [[v % p for v in row] + [rhs[i] % p] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [v * inv % p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [(v - c * w) % p for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]
