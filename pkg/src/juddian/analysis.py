"""Numerical checks of the perturbation, interlacing and density statements
for the zeros alpha_1(y) < ... < alpha_N(y) of x -> P_N(x, y)."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .laguerre import zeros_newton
from .tridiag import build_A, build_M, count_at_most, eigenvalues

DEFAULT_SLACK = 1e-9


def _slack(y: float, slack: float) -> float:
    return slack * max(1.0, y)


def positive_zero_count(N: int, y: float) -> int:
    """Number of positive zeros predicted for x -> P_N(x, y)."""
    if not y >= 0:
        raise ValueError(f"y must be nonnegative, got {y}")
    # isqrt(floor(y)) == floor(sqrt(y)) without float rounding at perfect squares
    return max(0, N - math.isqrt(math.floor(y)))


@dataclass
class SpectrumReport:
    N: int
    y: float
    alphas: np.ndarray
    weyl_ok: bool
    interlace_ok: bool
    positive_count: int


@dataclass
class DensityRecord:
    N: int
    delta: float
    gamma: float
    count: int
    asymptotic: float = field(init=False)
    ratio: float = field(init=False)

    def __post_init__(self):
        self.asymptotic = 4.0 / math.pi * self.gamma * math.sqrt(self.N)
        self.ratio = self.count / self.asymptotic


@dataclass
class BoundCheck:
    """Outcome of an inequality sweep; margins are >= -slack when satisfied."""

    ok: bool
    lower_margins: np.ndarray
    upper_margins: np.ndarray
    indices: np.ndarray
    violating_index: Optional[int] = None

    def __bool__(self):
        return self.ok


def alpha_zeros(N: int, y: float, tol: float = 0.0) -> np.ndarray:
    """The N eigenvalues of A_N(y), i.e. the zeros of x -> P_N(x, y)."""
    if not y >= 0:
        raise ValueError(f"y must be nonnegative, got {y}")
    return eigenvalues(build_A(N, y), tol=tol)


def verify_weyl(N: int, y: float, slack: float = DEFAULT_SLACK) -> BoundCheck:
    """alpha_i(y) - alpha_i(0) must lie in [-y, -y/N]; alpha_i also has to
    decrease strictly between y/2 and y."""
    if not y > 0:
        raise ValueError(f"y must be positive, got {y}")
    lam = eigenvalues(build_M(N))
    a = alpha_zeros(N, y)
    a_half = alpha_zeros(N, y / 2)
    eps = _slack(y, slack)
    diff = a - lam
    lower = diff + y
    upper = -y / N - diff
    ok_mask = (lower >= -eps) & (upper >= -eps) & (a < a_half) & (a_half < lam)
    bad = np.flatnonzero(~ok_mask)
    return BoundCheck(
        ok=bad.size == 0,
        lower_margins=lower,
        upper_margins=upper,
        indices=np.arange(1, N + 1),
        violating_index=int(bad[0]) + 1 if bad.size else None,
    )


def verify_interlacing(N: int, m: int, y: float, slack: float = DEFAULT_SLACK) -> BoundCheck:
    """lambda_{N-m,k-m} - y/(m+1) <= alpha_k(y) < lambda_{N-m,k} for k = m+1..N-m."""
    if not 1 <= m <= N / 2:
        raise ValueError(f"need 1 <= m <= N/2, got m={m}, N={N}")
    if not y > 0:
        raise ValueError(f"y must be positive, got {y}")
    k = np.arange(m + 1, N - m + 1)
    if k.size == 0:
        empty = np.empty(0)
        return BoundCheck(True, empty, empty, k)
    a = alpha_zeros(N, y)
    lam = zeros_newton(N - m).zeros
    eps = _slack(y, slack)
    lower = a[k - 1] - (lam[k - m - 1] - y / (m + 1))
    upper = lam[k - 1] - a[k - 1]
    ok_mask = (lower >= -eps) & (upper > -eps)
    bad = np.flatnonzero(~ok_mask)
    return BoundCheck(
        ok=bad.size == 0,
        lower_margins=lower,
        upper_margins=upper,
        indices=k,
        violating_index=int(k[bad[0]]) if bad.size else None,
    )


def spectrum_report(N: int, y: float, m: Optional[int] = None) -> SpectrumReport:
    alphas = alpha_zeros(N, y)
    if y > 0:
        weyl_ok = verify_weyl(N, y).ok
        if m is None:
            m = max(1, math.ceil(N ** 0.25))
        interlace_ok = verify_interlacing(N, m, y).ok if 2 * m <= N else True
    else:
        weyl_ok = interlace_ok = True
    return SpectrumReport(N, y, alphas, weyl_ok, interlace_ok, int(np.sum(alphas > 0)))


def count_alphas_at_most(N: int, y: float, x: float) -> int:
    """#{k : alpha_k(y) <= x} by a single Sturm count."""
    return count_at_most(build_A(N, y), x)


def juddian_count(N: int, delta: float, gamma: float) -> DensityRecord:
    """Number of couplings g <= gamma for which N - g^2 is a Juddian eigenvalue."""
    if N < 1 or not delta > 0 or not gamma > 0:
        raise ValueError("need N >= 1, delta > 0, gamma > 0")
    count = count_alphas_at_most(N, delta * delta, (2.0 * gamma) ** 2)
    return DensityRecord(N, delta, gamma, count)


def density_scan(delta: float, gamma: float, Ns: Sequence[int], threads: Optional[int] = None) -> List[DensityRecord]:
    Ns = list(Ns)
    if any(b < a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("Ns must be ascending")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        records = list(pool.map(lambda n: juddian_count(n, delta, gamma), Ns))
    return sorted(records, key=lambda r: r.N)


def positive_zeros(N: int, y: float) -> int:
    """N minus the number of eigenvalues of A_N(y) that are <= 0."""
    return N - count_at_most(build_A(N, y), 0.0)
