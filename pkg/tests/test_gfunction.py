import math
from fractions import Fraction

import numpy as np
import pytest

from juddian.analysis import alpha_zeros
from juddian.constraint_poly import eval_exact, kus_polynomial
from juddian.gfunction import (
    PoleGuardError,
    g_pm,
    g_scan,
    juddian_residual,
    k_sequence,
    pole_guard_hit,
    polynomial_from_k,
    scaled_juddian_residual,
)

G1, D1 = 1 / math.sqrt(8), 1 / math.sqrt(2)


def test_k_examples():
    seq = k_sequence(1.0, G1, D1, 1, allow_poles=True)
    assert seq.values[0] == 1.0
    assert abs(seq.values[1]) < 1e-15
    seq = k_sequence(2.0, 0.7, 0.4, 2, allow_poles=True)
    assert seq.residuals().max() < 1e-12


def test_k_recursion_residuals():
    seq = k_sequence(2.37, 0.7, 0.4, 40)
    assert seq.values[0] == 1.0
    assert seq.residuals().max() < 1e-12


def test_pole_guard():
    with pytest.raises(PoleGuardError) as info:
        k_sequence(3.0005, 0.5, 0.5, 10)
    assert info.value.m == 3
    # pole beyond the f indices used is fine
    k_sequence(3.0, 0.5, 0.5, 3)
    assert pole_guard_hit(2.0004) == 2
    assert pole_guard_hit(2.5) is None
    with pytest.raises(ValueError):
        k_sequence(0.5, 0.0, 0.5, 3)


def test_juddian_residual_examples():
    assert abs(juddian_residual(1, G1, D1)) < 1e-14
    x = alpha_zeros(2, 0.25)[0]
    assert abs(juddian_residual(2, math.sqrt(x) / 2, 0.5)) < 1e-12
    expected = float(eval_exact(kus_polynomial(3), 4, 1)) / (36 * 8)
    assert juddian_residual(3, 1.0, 1.0) == pytest.approx(expected, rel=1e-8)


def test_scaled_residual_small_at_root():
    x = alpha_zeros(6, 0.3)[2]
    assert scaled_juddian_residual(6, math.sqrt(x) / 2, math.sqrt(0.3)) < 1e-12


@pytest.mark.parametrize("n", [1, 4, 9])
def test_bridge(n):
    g, d = 0.63, 0.81
    exact = float(eval_exact(kus_polynomial(n), Fraction((2 * g) ** 2), Fraction(d * d)))
    assert polynomial_from_k(n, g, d) == pytest.approx(exact, rel=1e-8)


def test_g_limits():
    s = g_pm(0.5, 0.7, 0.0)
    assert s.g_plus == s.g_minus
    # g -> 0: g^n K_n tends to prod_{m<n} c_m / n!, c_m = (delta^2/(z-m) + m - z)/2,
    # so every term survives, not just n = 0
    z, d = 0.5, 0.4
    terms, h = [], 1.0
    for n in range(60):
        if n:
            h *= (d * d / (z - (n - 1)) + (n - 1) - z) / 2 / n
        terms.append((h * (1 - d / (z - n)), h * (1 + d / (z - n))))
    s = g_pm(z, 1e-12, d)
    assert s.converged
    assert s.g_plus == pytest.approx(math.fsum(t[0] for t in terms), rel=1e-9)
    assert s.g_minus == pytest.approx(math.fsum(t[1] for t in terms), rel=1e-9)


def test_g_sample_converges():
    s = g_pm(0.5, 0.7, 0.4)
    assert s.converged and math.isfinite(s.g_plus) and math.isfinite(s.g_minus)
    # compensated summation gives the same answer here
    c = g_pm(0.5, 0.7, 0.4, compensated=True)
    assert c.g_plus == pytest.approx(s.g_plus, rel=1e-12)
    assert c.g_minus == pytest.approx(s.g_minus, rel=1e-12)


def test_g_pm_not_converged_flag():
    s = g_pm(0.5, 0.7, 0.4, n_cap=3)
    assert not s.converged and s.truncation_n == 3


def test_g_scan_examples():
    samples = g_scan(0.1, 3.9, 100, 0.7, 0.4)
    assert 95 <= len(samples) <= 100
    zs = np.array([s.z for s in samples])
    assert np.all(np.abs(zs - np.round(zs)) >= 1e-3)
    assert all(s.converged for s in samples)
    samples = g_scan(0.1, 1.9, 50, G1, D1)
    assert all(math.isfinite(s.g_plus) and math.isfinite(s.g_minus) for s in samples)
    (mid,) = g_scan(1.1, 1.3, 1, 0.7, 0.4)
    assert mid.z == pytest.approx(1.2)


def test_g_scan_skips_guarded_points():
    samples = g_scan(0.0, 2.0, 5, 0.7, 0.4)
    assert [s.z for s in samples] == [0.5, 1.5]


def test_g_scan_rejects():
    with pytest.raises(ValueError):
        g_scan(1.0, 1.0, 4, 0.7, 0.4)
    with pytest.raises(ValueError):
        g_scan(0.1, 1.0, 0, 0.7, 0.4)
