"""Braak's G-functions G_+(z), G_-(z) and the K_n recursion behind them.

    n K_n = f_{n-1}(z) K_{n-1} - K_{n-2},    K_0 = 1,  K_1 = f_0(z),
    f_m(z) = 2g + (Delta^2 / (z - m) + m - z) / (2g),
    G_pm(z) = sum_n K_n(z) g^n (1 -+ Delta / (z - n)).

A Juddian eigenvalue n - g^2 occurs exactly when K_n(n; g, Delta) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

DEFAULT_POLE_GUARD = 1e-3
DEFAULT_N_CAP = 200
TAIL_WINDOW = 4


class PoleGuardError(ValueError):
    def __init__(self, z: float, m: int, guard: float):
        super().__init__(f"z={z!r} lies within {guard} of the pole at m={m}")
        self.z = z
        self.m = m


@dataclass(frozen=True)
class KSequence:
    z: float
    g: float
    delta: float
    values: np.ndarray

    def residuals(self) -> np.ndarray:
        """Relative re-substitution residuals of the recursion for n >= 2."""
        K = self.values
        out = np.zeros(max(len(K) - 2, 0))
        for n in range(2, len(K)):
            f = _f(n - 1, self.z, self.g, self.delta)
            lhs = n * K[n]
            rhs = f * K[n - 1] - K[n - 2]
            scale = max(abs(lhs), abs(f * K[n - 1]), abs(K[n - 2]), np.finfo(float).tiny)
            out[n - 2] = abs(lhs - rhs) / scale
        return out


@dataclass(frozen=True)
class GSample:
    z: float
    g_plus: float
    g_minus: float
    truncation_n: int
    converged: bool


def _f(m: int, z: float, g: float, delta: float) -> float:
    return 2.0 * g + (delta * delta / (z - m) + m - z) / (2.0 * g)


def _check_poles(z: float, upto: int, guard: float) -> None:
    """Reject z within ``guard`` of an integer m in [0, upto]."""
    m = round(z)
    if 0 <= m <= upto and abs(z - m) < guard:
        raise PoleGuardError(z, m, guard)


def k_sequence(
    z: float,
    g: float,
    delta: float,
    n_max: int,
    pole_guard: float = DEFAULT_POLE_GUARD,
    allow_poles: bool = False,
) -> KSequence:
    """K_0 .. K_{n_max} at z.  f_0 .. f_{n_max-1} are used, so z must avoid
    the integers 0 .. n_max-1 unless ``allow_poles`` is set."""
    if not g > 0:
        raise ValueError(f"g must be positive, got {g}")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if not allow_poles and n_max >= 1:
        _check_poles(z, n_max - 1, pole_guard)
    K = np.empty(n_max + 1)
    K[0] = 1.0
    if n_max >= 1:
        K[1] = _f(0, z, g, delta)
    for n in range(2, n_max + 1):
        K[n] = (_f(n - 1, z, g, delta) * K[n - 1] - K[n - 2]) / n
    return KSequence(z, g, delta, K)


def juddian_residual(n: int, g: float, delta: float) -> float:
    """K_n(n; g, Delta).  Only f_0..f_{n-1} enter, all finite at z = n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return float(k_sequence(float(n), g, delta, n, allow_poles=True).values[n])


def juddian_residual_gradient(n: int, g: float, delta: float, rel_step: float = 1e-6):
    """Central-difference gradient of K_n(n; g, Delta) in (g, Delta)."""
    hg = rel_step * max(1.0, g)
    hd = rel_step * max(1.0, delta)
    dg = (juddian_residual(n, g + hg, delta) - juddian_residual(n, g - hg, delta)) / (2 * hg)
    dd = (juddian_residual(n, g, delta + hd) - juddian_residual(n, g, delta - hd)) / (2 * hd)
    return dg, dd


def scaled_juddian_residual(n: int, g: float, delta: float) -> float:
    """|K_n(n)| / max(1, |grad K_n(n)|): distance-like, so it stays meaningful
    where K_n varies by many orders of magnitude per unit change in g."""
    k = juddian_residual(n, g, delta)
    dg, dd = juddian_residual_gradient(n, g, delta)
    return abs(k) / max(1.0, math.hypot(dg, dd))


def polynomial_from_k(n: int, g: float, delta: float) -> float:
    """(n!)^2 (2g)^n K_n(n; g, Delta), which equals P_n((2g)^2, Delta^2)."""
    return float(math.factorial(n)) ** 2 * (2.0 * g) ** n * juddian_residual(n, g, delta)


def g_pm(
    z: float,
    g: float,
    delta: float,
    rel_tol: float = 1e-14,
    n_cap: int = DEFAULT_N_CAP,
    pole_guard: float = DEFAULT_POLE_GUARD,
    compensated: bool = False,
) -> GSample:
    """Partial sums of G_+ and G_-, stopped once TAIL_WINDOW consecutive terms
    each move both sums by less than rel_tol relatively."""
    if not g > 0:
        raise ValueError(f"g must be positive, got {g}")
    _check_poles(z, n_cap, pole_guard)
    acc_p: List[float] = []
    acc_m: List[float] = []
    s_p = s_m = 0.0
    # h_n = K_n g^n obeys n h_n = g f_{n-1} h_{n-1} - g^2 h_{n-2}; K_n and g^n
    # separately over/underflow for small g
    h_prev, h_cur = 0.0, 1.0
    g2 = g * g
    quiet = 0
    for n in range(n_cap + 1):
        if n >= 1:
            gf = 2.0 * g2 + 0.5 * (delta * delta / (z - (n - 1)) + (n - 1) - z)
            h_prev, h_cur = h_cur, (gf * h_cur - g2 * h_prev) / n
        base = h_cur
        tp = base * (1.0 - delta / (z - n))
        tm = base * (1.0 + delta / (z - n))
        if compensated:
            acc_p.append(tp)
            acc_m.append(tm)
            s_p, s_m = math.fsum(acc_p), math.fsum(acc_m)
        else:
            s_p += tp
            s_m += tm
        small = abs(tp) <= rel_tol * abs(s_p) and abs(tm) <= rel_tol * abs(s_m)
        quiet = quiet + 1 if small else 0
        if quiet >= TAIL_WINDOW:
            return GSample(z, s_p, s_m, n, True)
    return GSample(z, s_p, s_m, n_cap, False)


def g_scan(
    z_lo: float,
    z_hi: float,
    samples: int,
    g: float,
    delta: float,
    pole_guard: float = DEFAULT_POLE_GUARD,
    rel_tol: float = 1e-14,
    n_cap: int = DEFAULT_N_CAP,
) -> List[GSample]:
    """G_pm on a uniform grid over [z_lo, z_hi], skipping grid points inside
    the pole guard of a nonnegative integer.  samples=1 gives the midpoint."""
    if not z_lo < z_hi:
        raise ValueError(f"need z_lo < z_hi, got ({z_lo}, {z_hi})")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    zs = [0.5 * (z_lo + z_hi)] if samples == 1 else np.linspace(z_lo, z_hi, samples).tolist()
    out = []
    for z in zs:
        if pole_guard_hit(z, pole_guard) is not None:
            continue
        out.append(g_pm(z, g, delta, rel_tol=rel_tol, n_cap=n_cap, pole_guard=pole_guard))
    return out


def pole_guard_hit(z: float, guard: float = DEFAULT_POLE_GUARD) -> Optional[int]:
    m = round(z)
    return m if m >= 0 and abs(z - m) < guard else None
