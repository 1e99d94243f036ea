"""Constraint polynomials, tridiagonal spectra and Juddian points of the quantum Rabi model."""

from .analysis import (
    DensityRecord,
    SpectrumReport,
    alpha_zeros,
    density_scan,
    juddian_count,
    spectrum_report,
    verify_interlacing,
    verify_weyl,
)
from .constraint_poly import BivariatePoly, UnivariatePoly, eval_exact, kus_polynomial, restrict_to_x_axis, restrict_to_y_axis
from .gfunction import g_pm, g_scan, juddian_residual, k_sequence
from .laguerre import count_below, laguerre_eval, zeros_newton
from .search import Branch, JuddianPoint, find_double_juddian, to_physical, trace_branch, verify_distinctness
from .tridiag import (
    RationalTridiag,
    SymTridiag,
    build_A,
    build_M,
    charpoly_eval,
    det_oracle_S,
    eigenvalues,
    eigenvalues_in,
    sturm_count,
)

__version__ = "0.1.0"
