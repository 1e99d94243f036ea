"""Symmetric tridiagonal matrices M_N, A_N(y) = M_N - y D_N^{-1} and their spectra.

Eigenvalues are found by Sturm-sequence (LDL^T inertia) bisection, which
gives eigenvalue counts below a threshold in O(N) and targeted eigenvalues
in sub-intervals.  Two exact determinant routes are provided as oracles for
the constraint polynomial: the characteristic polynomial of A_N(y) and the
det(y I + x D_N + S_N) form.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

Rational = Union[int, Fraction]

DEFAULT_REL_TOL = 1e-13
DEFAULT_MAX_ITER = 128

# the scalar pure-Python loop beats per-row numpy overhead for few shifts
_SCALAR_PATH_MAX_SHIFTS = 4


class EigenSolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SymTridiag:
    """Real symmetric tridiagonal matrix; ``offdiag[i]`` couples rows i and i+1."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=np.float64)
        e = np.ascontiguousarray(self.offdiag, dtype=np.float64)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("diag must be a non-empty 1-d array")
        if e.shape != (d.size - 1,):
            raise ValueError(f"offdiag must have length {d.size - 1}, got {e.shape}")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.size

    def gershgorin(self) -> Tuple[float, float]:
        r = 2.0 * float(np.max(np.abs(self.offdiag))) if self.n > 1 else 0.0
        return float(np.min(self.diag)) - r, float(np.max(self.diag)) + r

    def lower_minor(self, m: int) -> "SymTridiag":
        """Principal submatrix obtained by deleting the first m rows and columns."""
        return SymTridiag(self.diag[m:], self.offdiag[m:])

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def build_M(N: int) -> SymTridiag:
    return build_A(N, 0.0)


def build_A(N: int, y: float) -> SymTridiag:
    """A_N(y) = M_N - y D_N^{-1}.

    Row i (1-based) has diagonal 2(N-i)+1 - y/i and couples to row i+1
    with weight N-i.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not y >= 0:
        raise ValueError(f"y must be nonnegative, got {y}")
    i = np.arange(1, N + 1, dtype=np.float64)
    diag = 2.0 * (N - i) + 1.0
    if y:
        diag = diag - y / i
    return SymTridiag(diag, (N - i[:-1]))


def _pivmin(T: SymTridiag) -> float:
    e2max = float(np.max(T.offdiag**2)) if T.n > 1 else 0.0
    return sys.float_info.min * max(1.0, e2max)


def sturm_count(T: SymTridiag, x: float) -> int:
    """Number of eigenvalues of T strictly less than x.

    Counts negative pivots of the LDL^T factorisation of T - x I.  A pivot
    of magnitude below ``pivmin`` is replaced by ``+pivmin``, which is the
    same as shifting x down by a negligible amount, so eigenvalues equal to
    x are not counted.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("x is NaN")
    return int(sturm_counts(T, np.array([x]))[0])


def sturm_counts(T: SymTridiag, xs) -> np.ndarray:
    """Vectorised :func:`sturm_count` over an array of shifts."""
    xs = np.asarray(xs, dtype=np.float64)
    if np.isnan(xs).any():
        raise ValueError("shift array contains NaN")
    shape = xs.shape
    flat = xs.ravel()
    pivmin = _pivmin(T)
    if flat.size <= _SCALAR_PATH_MAX_SHIFTS:
        a = T.diag.tolist()
        e2 = (T.offdiag**2).tolist()
        out = np.array([_count_scalar(a, e2, float(x), pivmin) for x in flat], dtype=np.int64)
        return out.reshape(shape)
    a = T.diag
    e2 = T.offdiag**2
    d = a[0] - flat
    d = np.where(np.abs(d) < pivmin, pivmin, d)
    count = (d < 0).astype(np.int64)
    for k in range(1, T.n):
        d = (a[k] - flat) - e2[k - 1] / d
        d = np.where(np.abs(d) < pivmin, pivmin, d)
        count += d < 0
    return count.reshape(shape)


def _count_scalar(a: List[float], e2: List[float], x: float, pivmin: float) -> int:
    count = 0
    d = 1.0
    for k in range(len(a)):
        d = a[k] - x if k == 0 else (a[k] - x) - e2[k - 1] / d
        # guard before counting so a replaced pivot is never tallied as negative
        if -pivmin < d < pivmin:
            d = pivmin
        if d < 0:
            count += 1
    return count


def count_at_most(T: SymTridiag, x: float) -> int:
    """Number of eigenvalues <= x (threshold nudged up by one ulp)."""
    return sturm_count(T, math.nextafter(float(x), math.inf))


def _bisect(T, lo, hi, idx, tol, max_iter, rel_tol):
    """Shrink [lo_k, hi_k] around eigenvalue number idx_k (0-based) of T.

    Invariant: count(lo_k) <= idx_k < count(hi_k).
    """
    lo = np.asarray(lo, dtype=np.float64).copy()
    hi = np.asarray(hi, dtype=np.float64).copy()
    idx = np.asarray(idx)
    active = np.ones(lo.shape, dtype=bool)
    for _ in range(max_iter):
        width = hi - lo
        scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
        mid = 0.5 * (lo + hi)
        done = (width <= np.maximum(tol, rel_tol * scale)) | (mid <= lo) | (mid >= hi)
        active &= ~done
        if not active.any():
            return 0.5 * (lo + hi)
        sel = np.flatnonzero(active)
        c = sturm_counts(T, mid[sel])
        up = c > idx[sel]
        hi[sel[up]] = mid[sel[up]]
        lo[sel[~up]] = mid[sel[~up]]
    bad = np.flatnonzero(active)
    raise EigenSolverError(
        f"bisection did not reach width {tol} in {max_iter} iterations "
        f"for eigenvalue indices {idx[bad].tolist()}"
    )


def eigenvalues_in(
    T: SymTridiag,
    lo: float,
    hi: float,
    tol: float = 0.0,
    max_iter: int = DEFAULT_MAX_ITER,
    rel_tol: float = DEFAULT_REL_TOL,
) -> np.ndarray:
    """All eigenvalues of T in (lo, hi], ascending.

    Each is bracketed to width <= max(tol, rel_tol * max(1, |x|)), or to
    adjacent floats if that is tighter than float64 allows.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    g_lo, g_hi = T.gershgorin()
    n_lo = count_at_most(T, lo)
    n_hi = count_at_most(T, hi)
    if n_hi <= n_lo:
        return np.empty(0)
    a = max(lo, g_lo - 1.0)
    b = min(math.nextafter(hi, math.inf), g_hi + 1.0)
    idx = np.arange(n_lo, n_hi)
    vals = _bisect(T, np.full(idx.size, a), np.full(idx.size, b), idx, tol, max_iter, rel_tol)
    return np.sort(vals)


def eigenvalues(T: SymTridiag, tol: float = 0.0, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """All N eigenvalues of T, ascending."""
    g_lo, g_hi = T.gershgorin()
    idx = np.arange(T.n)
    vals = _bisect(T, np.full(T.n, g_lo - 1.0), np.full(T.n, g_hi + 1.0), idx, tol, DEFAULT_MAX_ITER, rel_tol)
    return np.sort(vals)


def kth_eigenvalue(T: SymTridiag, k: int, tol: float = 0.0, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The k-th smallest eigenvalue, k = 1..N."""
    if not 1 <= k <= T.n:
        raise ValueError(f"k must lie in [1, {T.n}], got {k}")
    g_lo, g_hi = T.gershgorin()
    v = _bisect(T, np.array([g_lo - 1.0]), np.array([g_hi + 1.0]), np.array([k - 1]), tol, DEFAULT_MAX_ITER, rel_tol)
    return float(v[0])


# ---------------------------------------------------------------------------
# exact determinant routes


@dataclass(frozen=True)
class RationalTridiag:
    """Tridiagonal matrix stored as diagonal and products b_i c_i of the
    off-diagonal pairs; the determinant depends on nothing else."""

    diag: Tuple[Fraction, ...]
    offdiag_products: Tuple[Fraction, ...]

    def __init__(self, diag: Sequence[Rational], offdiag_products: Sequence[Rational]):
        d = tuple(Fraction(v) for v in diag)
        p = tuple(Fraction(v) for v in offdiag_products)
        if len(p) != max(len(d) - 1, 0):
            raise ValueError("offdiag_products must have length len(diag) - 1")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag_products", p)


def rational_A(N: int, y: Rational) -> RationalTridiag:
    y = Fraction(y)
    diag = [2 * (N - i) + 1 - y / i for i in range(1, N + 1)]
    return RationalTridiag(diag, [(N - i) ** 2 for i in range(1, N)])


def determinant(T: RationalTridiag) -> Fraction:
    """det T by the continuant recursion D_k = a_k D_{k-1} - p_{k-1} D_{k-2}."""
    prev, cur = Fraction(1), Fraction(1)
    for k, a in enumerate(T.diag):
        if k == 0:
            cur = a
        else:
            prev, cur = cur, a * cur - T.offdiag_products[k - 1] * prev
    return cur


def charpoly_eval(T: RationalTridiag, x: Rational) -> Fraction:
    """Exact det(x I - T)."""
    x = Fraction(x)
    shifted = RationalTridiag([x - a for a in T.diag], T.offdiag_products)
    return determinant(shifted)


def s_matrix(N: int, x: Rational, y: Rational) -> RationalTridiag:
    """y I + x D_N + S_N, with S_N diagonal -i(2(N-i)+1) and off-diagonal
    products (N-i)^2 i (i+1)."""
    x = Fraction(x)
    y = Fraction(y)
    diag = [y + x * i - i * (2 * (N - i) + 1) for i in range(1, N + 1)]
    prods = [(N - i) ** 2 * i * (i + 1) for i in range(1, N)]
    return RationalTridiag(diag, prods)


def det_oracle_S(N: int, x: Rational, y: Rational) -> Fraction:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return determinant(s_matrix(N, x, y))


def charpoly_with_gradient(N: int, x: Rational, y: Rational) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact Q = det(x I - A_N(y)) together with dQ/dx and dQ/dy."""
    x = Fraction(x)
    y = Fraction(y)
    q0, qx0, qy0 = Fraction(1), Fraction(0), Fraction(0)
    q1 = x - (2 * N - 1) + y
    qx1, qy1 = Fraction(1), Fraction(1)
    for k in range(2, N + 1):
        u = x - (2 * (N - k) + 1) + y / k
        p = (N - k + 1) ** 2
        q2 = u * q1 - p * q0
        qx2 = q1 + u * qx1 - p * qx0
        qy2 = q1 / k + u * qy1 - p * qy0
        q0, qx0, qy0, q1, qx1, qy1 = q1, qx1, qy1, q2, qx2, qy2
    return q1, qx1, qy1


def charpoly_float(N: int, x: float, y: float) -> float:
    """Float det(x I - A_N(y)); equals P_N(x, y) / N!."""
    q0, q1 = 1.0, x - (2 * N - 1) + y
    for k in range(2, N + 1):
        q0, q1 = q1, (x - (2 * (N - k) + 1) + y / k) * q1 - (N - k + 1) ** 2 * q0
    return q1
