"""Branches of the first-quadrant zero locus of P_n and double-Juddian points.

For fixed y the zeros of x -> P_n(x, y) are the eigenvalues of A_n(y), so
the m-th branch is y -> alpha_m(y) for 0 <= y <= m^2, running from
(lambda_{n,m}, 0) to (0, m^2).  A double-Juddian point for levels (m, N) is
a crossing of the first branch of Z_m with a branch of Z_N.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gfunction
from .constraint_poly import kus_polynomial, restrict_to_line
from .rootiso import real_roots_in
from .tridiag import (
    build_A,
    build_M,
    charpoly_float,
    charpoly_with_gradient,
    kth_eigenvalue,
    sturm_count,
)

log = logging.getLogger(__name__)

DEFAULT_GRID = 256
DEFAULT_TOL = 1e-9
K_TOL = 1e-6


class CrossingNotBracketed(RuntimeError):
    def __init__(self, m: int, N: int, i: int):
        super().__init__(f"crossing not bracketed: branch {i} of Z_{N} vs first branch of Z_{m}")
        self.m, self.N, self.i = m, N, i


@dataclass
class Branch:
    n: int
    m: int
    points: np.ndarray  # rows (x, y), y ascending

    def to_csv(self) -> str:
        lines = ["y,x"]
        lines += [f"{y:.17g},{x:.17g}" for x, y in self.points]
        return "\n".join(lines) + "\n"


@dataclass
class JuddianPoint:
    g: float
    delta: float
    levels: Tuple[int, int]
    residual_m: float
    residual_N: float
    branch_index: int
    x: float
    y: float
    k_residual_m: float = math.nan
    k_residual_N: float = math.nan
    raw_k_m: float = math.nan
    raw_k_N: float = math.nan
    refined: bool = True
    other_crossings: List[float] = field(default_factory=list)

    def certified(self, tol: float = DEFAULT_TOL, k_tol: float = K_TOL) -> bool:
        return (
            self.residual_m < tol
            and self.residual_N < tol
            and abs(self.raw_k_m) < k_tol
            and abs(self.raw_k_N) < k_tol
        )

    def to_json(self) -> str:
        m, N = self.levels
        rec = {
            "m": m,
            "N": N,
            "i": self.branch_index,
            "x": self.x,
            "y": self.y,
            "g": self.g,
            "delta": self.delta,
            "res_m": self.residual_m,
            "res_N": self.residual_N,
        }
        return json.dumps(rec)


def to_physical(x: float, y: float) -> Tuple[float, float]:
    """(X, Y) = ((2g)^2, Delta^2) -> (g, Delta)."""
    if x < 0 or y < 0:
        raise ValueError(f"x and y must be nonnegative, got ({x}, {y})")
    return math.sqrt(x) / 2.0, math.sqrt(y)


def trace_branch(n: int, m: int, steps: int) -> Branch:
    """Sample alpha_m(y) on a uniform grid of ``steps`` points over [0, m^2]."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if steps < 1:
        raise ValueError("steps must be positive")
    ys = np.array([0.0]) if steps == 1 else np.linspace(0.0, float(m * m), steps)
    xs = np.array([kth_eigenvalue(build_A(n, float(y)), m) for y in ys])
    # alpha_m(m^2) = 0 exactly; bisection leaves ~1e-16 noise of either sign
    if steps > 1:
        xs[-1] = max(xs[-1], 0.0)
    return Branch(n, m, np.column_stack([xs, ys]))


def scaled_residual(n: int, x: float, y: float) -> float:
    """|P_n| / |grad P_n| at the float point (x, y), computed exactly.

    Scale-free: a first-order estimate of the distance from (x, y) to the
    zero locus Z_n.
    """
    q, qx, qy = charpoly_with_gradient(n, Fraction(x), Fraction(y))
    norm = math.hypot(float(qx), float(qy))
    if norm == 0.0:
        return math.inf if q else 0.0
    return float(abs(q)) / norm


class _Crossing:
    """alpha_1 of Z_m against the branches of Z_N, as functions of y."""

    def __init__(self, m: int, N: int):
        self.m = m
        self.N = N

    def base(self, y: float) -> float:
        if self.m == 1:
            return 1.0 - y
        return kth_eigenvalue(build_A(self.m, y), 1)

    def count(self, y: float) -> int:
        """Branches of Z_N lying strictly left of Z_{m,1} at height y."""
        return sturm_count(build_A(self.N, y), self.base(y))

    def bisect(self, i: int, lo: float, hi: float) -> float:
        """Locate where [count(y) >= i] flips inside (lo, hi)."""
        below_lo = self.count(lo) >= i
        while True:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                return mid
            if (self.count(mid) >= i) == below_lo:
                lo = mid
            else:
                hi = mid


def _newton_refine(m: int, N: int, x: float, y: float, tol: float, iters: int = 8) -> Tuple[float, float, bool]:
    """2-d Newton on (Q_m, Q_N) with central-difference Jacobian.

    Returns the best point seen (the starting point included) by exact
    scaled residual, and whether that residual is within tol.
    """

    def F(u, v):
        return np.array([charpoly_float(m, u, v), charpoly_float(N, u, v)])

    def score(u, v):
        return max(scaled_residual(m, u, v), scaled_residual(N, u, v))

    best = (x, y)
    best_score = score(x, y)
    for _ in range(iters):
        h = 1e-6 * max(1.0, abs(x), abs(y))
        J = np.column_stack([(F(x + h, y) - F(x - h, y)) / (2 * h), (F(x, y + h) - F(x, y - h)) / (2 * h)])
        try:
            step = np.linalg.solve(J, F(x, y))
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        x, y = x - step[0], y - step[1]
        if x < 0 or y < 0:
            break
        s = score(x, y)
        if s < best_score:
            best, best_score = (x, y), s
        if s == 0.0 or abs(step[0]) + abs(step[1]) <= 4 * np.finfo(float).eps * (abs(x) + abs(y)):
            break
    return float(best[0]), float(best[1]), best_score <= tol


def _branch_crossings(cr: _Crossing, i: int, ys: np.ndarray, counts: np.ndarray) -> List[float]:
    """All grid-bracketed crossings of branch i, ascending in y."""
    below = counts >= i
    flips = np.flatnonzero(below[:-1] != below[1:])
    return [cr.bisect(i, float(ys[j]), float(ys[j + 1])) for j in flips]


def branch_candidates(m: int, N: int) -> List[int]:
    """Indices i >= 2 with lambda_{N,i} < lambda_{m,1}."""
    lam_m1 = kth_eigenvalue(build_M(m), 1)
    below = sturm_count(build_M(N), lam_m1)
    return list(range(2, below + 1))


def find_double_juddian(
    m: int,
    N: int,
    tol: float = DEFAULT_TOL,
    grid: int = DEFAULT_GRID,
    threads: Optional[int] = None,
) -> List[JuddianPoint]:
    """Points where both m - g^2 and N - g^2 are Juddian eigenvalues.

    One point per branch Z_{N,i}, i >= 2, whose x-intercept lies left of
    that of Z_{m,1}; each such branch must cross Z_{m,1} for 0 < y < 1.
    The crossing with smallest y is returned; any others are logged and
    kept in ``other_crossings``.
    """
    if not N > m >= 1:
        raise ValueError(f"need N > m >= 1, got m={m}, N={N}")
    cands = branch_candidates(m, N)
    if not cands:
        return []
    cr = _Crossing(m, N)
    ys = np.linspace(0.0, 1.0, grid + 1)
    counts = np.array([cr.count(float(y)) for y in ys])

    def one(i: int) -> JuddianPoint:
        ycs = _branch_crossings(cr, i, ys, counts)
        if not ycs:
            raise CrossingNotBracketed(m, N, i)
        if len(ycs) > 1:
            log.info("branch %d of Z_%d crosses Z_%d,1 %d times; keeping y=%r", i, N, m, len(ycs), ycs[0])
        y0 = ycs[0]
        x0 = cr.base(y0)
        x, y, refined = _newton_refine(m, N, x0, y0, tol)
        return make_point(m, N, i, x, y, refined, other_crossings=ycs[1:])

    with ThreadPoolExecutor(max_workers=threads) as pool:
        points = list(pool.map(one, cands))
    return sorted(points, key=lambda p: (p.levels[1], p.branch_index))


def polish_physical(m: int, N: int, g: float, delta: float, span: int = 3000) -> Tuple[float, float]:
    """Pick the float pair near (g, delta) minimising max |K_m(m)|, |K_N(N)|.

    |grad K_N| grows fast with N (about 1e11 at N = 30), so a single ulp in g
    moves K_N(N) by ~1e-5.  Stepping j ulps in delta and the compensating
    integer number of ulps in g walks a much finer lattice of K values.
    """

    def obj(u, v):
        return max(abs(gfunction.juddian_residual(m, u, v)), abs(gfunction.juddian_residual(N, u, v)))

    k0 = gfunction.juddian_residual(N, g, delta)
    a, b = gfunction.juddian_residual_gradient(N, g, delta)
    best, best_val = (g, delta), obj(g, delta)
    if a == 0.0 or not math.isfinite(a):
        return best
    ug, ud = math.ulp(g), math.ulp(delta)
    for j in range(-span, span + 1):
        t = (-k0 - b * j * ud) / (a * ug)
        for i in (math.floor(t), math.ceil(t)):
            if abs(k0 + a * i * ug + b * j * ud) >= 0.5 * best_val:
                continue
            u, v = g + i * ug, delta + j * ud
            if u <= 0 or v < 0:
                continue
            val = obj(u, v)
            if val < best_val:
                best, best_val = (u, v), val
    return best


def make_point(m: int, N: int, i: int, x: float, y: float, refined: bool = True, other_crossings=()) -> JuddianPoint:
    g, delta = polish_physical(m, N, *to_physical(x, y))
    x, y = (2.0 * g) ** 2, delta * delta
    km = gfunction.juddian_residual(m, g, delta)
    kN = gfunction.juddian_residual(N, g, delta)
    return JuddianPoint(
        g=g,
        delta=delta,
        levels=(m, N),
        residual_m=scaled_residual(m, x, y),
        residual_N=scaled_residual(N, x, y),
        branch_index=i,
        x=x,
        y=y,
        k_residual_m=gfunction.scaled_juddian_residual(m, g, delta),
        k_residual_N=gfunction.scaled_juddian_residual(N, g, delta),
        raw_k_m=km,
        raw_k_N=kN,
        refined=refined,
        other_crossings=list(other_crossings),
    )


def all_line_crossings(N: int, grid: int = DEFAULT_GRID) -> List[Tuple[int, float]]:
    """Every grid-bracketed crossing (branch index, x) of Z_N with the line
    x + y = 1 for 0 < y < 1, via eigenvalue counts."""
    cr = _Crossing(1, N)
    ys = np.linspace(0.0, 1.0, grid + 1)
    counts = np.array([cr.count(float(y)) for y in ys])
    out = []
    for i in range(2, N + 1):
        for y in _branch_crossings(cr, i, ys, counts):
            out.append((i, 1.0 - y))
    return sorted(out, key=lambda t: t[1])


def exact_line_crossings(N: int) -> List[Fraction]:
    """Roots of the univariate polynomial P_N(x, 1 - x) in (0, 1), isolated
    exactly and refined to width 2^-60."""
    p = kus_polynomial(N)
    line = restrict_to_line(p, 0, 1, 1, -1)
    return real_roots_in(line.coeffs, 0, 1)


def verify_distinctness(points: Sequence[JuddianPoint], tol: float = DEFAULT_TOL) -> bool:
    """True iff all (g, Delta) pairs are pairwise farther apart than tol."""
    pts = [(p.g, p.delta) for p in points]
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if math.dist(pts[a], pts[b]) <= tol:
                return False
    return True


def counting_replay(m: int, Ns: Sequence[int]) -> List[dict]:
    """Size of P(N) = #{i >= 2 : lambda_{N,i} < lambda_{m,1}} for each N, next
    to its asymptotic (2/pi) sqrt(lambda_{m,1} N) and the total produced at
    earlier stages."""
    lam = kth_eigenvalue(build_M(m), 1)
    rows = []
    earlier = 0
    for N in Ns:
        size = len(branch_candidates(m, N))
        rows.append(
            {
                "N": N,
                "size": size,
                "asymptotic": 2.0 / math.pi * math.sqrt(lam * N),
                "earlier": earlier,
            }
        )
        earlier += size
    return rows
