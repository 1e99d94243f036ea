"""Classical Laguerre polynomials L_N: evaluation, zeros, zero counting."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .tridiag import build_M, count_at_most

_RESCALE = 1e150


class LaguerreConvergenceError(RuntimeError):
    def __init__(self, index: int, N: int):
        super().__init__(f"Newton iteration for zero {index} of L_{N} did not converge")
        self.index = index
        self.N = N


@dataclass(frozen=True)
class LaguerreZeros:
    N: int
    zeros: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=np.float64)
        if z.shape != (self.N,):
            raise ValueError(f"expected {self.N} zeros, got {z.shape}")
        if not (z[0] > 0 and np.all(np.diff(z) > 0)):
            raise ValueError("zeros must be positive and strictly increasing")
        z.setflags(write=False)
        object.__setattr__(self, "zeros", z)

    def __getitem__(self, k):
        return self.zeros[k]

    def __len__(self):
        return self.N


def laguerre_eval(N: int, x: float) -> float:
    """L_N(x) via (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    prev, cur = 0.0, 1.0
    for k in range(N):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def laguerre_series(N: int, x: float) -> float:
    """Direct sum of (-1)^m C(N, m) x^m / m!; only sensible for small N."""
    return math.fsum((-1) ** m * math.comb(N, m) * x**m / math.factorial(m) for m in range(N + 1))


def _newton_ratio(N: int, x: np.ndarray) -> np.ndarray:
    """L_N(x) / L_N'(x), with the recurrence rescaled to avoid overflow."""
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(N):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        big = np.abs(cur) > _RESCALE
        if big.any():
            prev = np.where(big, prev / _RESCALE, prev)
            cur = np.where(big, cur / _RESCALE, cur)
    # x L_N' = N (L_N - L_{N-1})
    return x * cur / (N * (cur - prev))


def zeros_newton(N: int, tol: float | None = None, max_iter: int = 30) -> LaguerreZeros:
    """All zeros of L_N.

    Seeds are the Golub-Welsch nodes from LAPACK; each is then polished by
    Newton steps on the three-term recurrence until the step falls below
    tol * max(1, x).  The default tol tracks the recurrence's rounding
    noise, which grows roughly like N * eps.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if tol is None:
        tol = 1e-14 + 2 * N * np.finfo(float).eps
    k = np.arange(N, dtype=np.float64)
    if N == 1:
        x = np.array([1.0])
    else:
        x = eigvalsh_tridiagonal(2 * k + 1, k[1:], lapack_driver="stebz")
    converged = np.zeros(N, dtype=bool)
    for _ in range(max_iter):
        step = _newton_ratio(N, x)
        step = np.where(converged, 0.0, step)
        x = x - step
        converged |= np.abs(step) <= tol * np.maximum(1.0, np.abs(x))
        if converged.all():
            break
    if not converged.all():
        raise LaguerreConvergenceError(int(np.flatnonzero(~converged)[0]) + 1, N)
    return LaguerreZeros(N, np.sort(x))


def count_below(N: int, x: float) -> int:
    """#{k : lambda_{N,k} <= x}, counted on M_N by Sturm sequences."""
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    return count_at_most(build_M(N), x)


def gawronski_limit(x: float) -> float:
    """Limit of count_below(N, x) / sqrt(N)."""
    return 2.0 / math.pi * math.sqrt(x)
