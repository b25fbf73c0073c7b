"""Integer kernels for bivariate polynomial arithmetic.

Elements of the component rings are stored as integer matrices ``num[i, j]``
(coefficient of ``q**i * x**j``) over a common denominator.  The hot path is
multiplication followed by reduction modulo a monic polynomial in ``x`` and a
monic polynomial in ``q``.  Reduction is a matrix product against the
precomputed remainders of the overflowing monomials.

Three code paths compute the same thing:

* ``numba``: ``@njit`` loops over ``int64`` arrays,
* ``numpy``: vectorised ``int64`` convolution and matmul,
* ``object``: the same numpy calls on Python integers (unbounded).

The ``int64`` paths are only taken when an a-priori bound on every
intermediate entry fits below ``2**62``; anything larger falls back to the
exact object path, so results never depend on the backend.  The backend is
chosen by the ``CYCLOSYNTOMIC_KERNELS`` environment variable (``numba`` by
default, ``numpy`` to disable JIT compilation).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HEADROOM = 2**62


def _select_backend() -> str:
    choice = os.environ.get("CYCLOSYNTOMIC_KERNELS", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"CYCLOSYNTOMIC_KERNELS must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover - numba is an optional speedup
            return "numpy"
    return choice


BACKEND = _select_backend()


@dataclass(frozen=True)
class Reducer:
    """Remainders of ``t**(n+k)`` modulo a monic integer polynomial of degree n."""

    n: int
    rows: np.ndarray  # object, shape (k, n)
    rows64: np.ndarray | None
    growth: int  # 1 + max column absolute sum of ``rows``

    @property
    def span(self) -> int:
        return self.n + self.rows.shape[0]


@lru_cache(maxsize=None)
def reducer(modulus: tuple[int, ...], length: int) -> Reducer:
    """Reducer for polynomials with fewer than ``length`` coefficients.

    ``modulus`` is a monic integer coefficient tuple, lowest degree first.
    """
    n = len(modulus) - 1
    if n < 0 or modulus[-1] != 1:
        raise ValueError("modulus must be monic")
    k = max(length - n, 0)
    rows = np.zeros((k, n), dtype=object)
    if k:
        # t^n = -(lower part); iterate t^(n+i) = t * t^(n+i-1)
        cur = [-c for c in modulus[:n]]
        for i in range(k):
            rows[i, :] = cur
            top = cur[-1] if n else 0
            cur = [0] + cur[:-1] if n else []
            for j in range(n):
                cur[j] -= top * modulus[j]
    growth = 1 + (max(sum(abs(v) for v in rows[:, j]) for j in range(n)) if k and n else 0)
    rows64 = rows.astype(np.int64) if growth < HEADROOM and _fits(rows) else None
    return Reducer(n, rows, rows64, growth)


def _fits(a: np.ndarray) -> bool:
    return maxabs(a) < HEADROOM


def maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(v)) for v in a.flat)


# --------------------------------------------------------------------------
# object / numpy paths (same code, different dtype)


def _conv2d_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    w = ca + cb - 1
    pa = np.zeros((ra, w), dtype=a.dtype)
    pa[:, :ca] = a
    pb = np.zeros((rb, w), dtype=b.dtype)
    pb[:, :cb] = b
    flat = np.convolve(pa.ravel(), pb.ravel())
    return flat[: (ra + rb - 1) * w].reshape(ra + rb - 1, w)


def _reduce_np(p: np.ndarray, xrows: np.ndarray, nf: int, qrows: np.ndarray | None, ng: int) -> np.ndarray:
    kx = p.shape[1] - nf
    if kx > 0:
        p = p[:, :nf] + p[:, nf:] @ xrows[:kx]
    elif kx < 0:
        p = np.concatenate([p, np.zeros((p.shape[0], -kx), dtype=p.dtype)], axis=1)
    if qrows is None:
        return p
    kq = p.shape[0] - ng
    if kq > 0:
        return p[:ng] + qrows[:kq].T @ p[ng:]
    if kq < 0:
        return np.concatenate([p, np.zeros((-kq, nf), dtype=p.dtype)], axis=0)
    return p


# --------------------------------------------------------------------------
# numba path

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _mulmod_nb(a, b, xrows, nf, qrows, ng):  # pragma: no cover - compiled
        ra, ca = a.shape
        rb, cb = b.shape
        prod = np.zeros((ra + rb - 1, ca + cb - 1), np.int64)
        for i in range(ra):
            for j in range(ca):
                v = a[i, j]
                if v == 0:
                    continue
                for k in range(rb):
                    for l in range(cb):
                        prod[i + k, j + l] += v * b[k, l]
        return _reduce_nb(prod, xrows, nf, qrows, ng)

    @njit(cache=True)
    def _reduce_nb(p, xrows, nf, qrows, ng):  # pragma: no cover - compiled
        rows = p.shape[0]
        xr = np.zeros((rows, nf), np.int64)
        for i in range(rows):
            for j in range(min(nf, p.shape[1])):
                xr[i, j] = p[i, j]
            for k in range(p.shape[1] - nf):
                v = p[i, nf + k]
                if v != 0:
                    for j in range(nf):
                        xr[i, j] += v * xrows[k, j]
        if ng < 0:
            return xr
        out = np.zeros((ng, nf), np.int64)
        for i in range(min(ng, rows)):
            for j in range(nf):
                out[i, j] = xr[i, j]
        for k in range(rows - ng):
            for j in range(nf):
                v = xr[ng + k, j]
                if v != 0:
                    for i in range(ng):
                        out[i, j] += v * qrows[k, i]
        return out


_EMPTY64 = np.zeros((0, 0), dtype=np.int64)


def _run64(kind, a, b, xr: Reducer, qr: Reducer | None):
    ng = qr.n if qr is not None else -1
    q64 = qr.rows64 if qr is not None else _EMPTY64
    if BACKEND == "numba":
        if kind == "mul":
            return _mulmod_nb(a, b, xr.rows64, xr.n, q64, ng)
        return _reduce_nb(a, xr.rows64, xr.n, q64, ng)
    p = _conv2d_np(a, b) if kind == "mul" else a
    return _reduce_np(p, xr.rows64, xr.n, q64 if qr is not None else None, ng)


def _int64_ok(bound: int, xr: Reducer, qr: Reducer | None) -> bool:
    if xr.rows64 is None or (qr is not None and qr.rows64 is None):
        return False
    bound *= xr.growth
    if qr is not None:
        bound *= qr.growth
    return bound < HEADROOM


def mulmod(a: np.ndarray, b: np.ndarray, xr: Reducer, qr: Reducer | None = None) -> np.ndarray:
    """Product of two integer matrices reduced in both variables (object result)."""
    if a.size == 0 or b.size == 0:
        raise ValueError("empty operand")
    bound = maxabs(a) * maxabs(b) * min(a.shape[0], b.shape[0]) * min(a.shape[1], b.shape[1])
    if bound == 0:
        rows = qr.n if qr is not None else a.shape[0] + b.shape[0] - 1
        return np.zeros((rows, xr.n), dtype=object)
    if _int64_ok(bound, xr, qr):
        out = _run64("mul", a.astype(np.int64), b.astype(np.int64), xr, qr)
        return out.astype(object)
    p = _conv2d_np(a, b)
    return _reduce_np(p, xr.rows, xr.n, qr.rows if qr is not None else None, qr.n if qr else -1)


def reduce(p: np.ndarray, xr: Reducer, qr: Reducer | None = None) -> np.ndarray:
    """Reduce an integer matrix modulo the x-modulus and (optionally) the q-modulus."""
    bound = maxabs(p)
    if bound and _int64_ok(bound, xr, qr):
        return _run64("reduce", p.astype(np.int64), None, xr, qr).astype(object)
    return _reduce_np(p, xr.rows, xr.n, qr.rows if qr is not None else None, qr.n if qr else -1)
