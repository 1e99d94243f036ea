"""Self-check suites run by ``juddian verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

from .analysis import verify_interlacing, verify_weyl
from .constraint_poly import eval_exact, kus_polynomial
from .tridiag import charpoly_eval, det_oracle_S, rational_A

# above argparse's usage-error code 2 so the two never collide
SUITE_BITS = {"oracle": 8, "weyl": 16, "interlace": 32}


@dataclass
class SuiteResult:
    name: str
    ok: bool
    lines: List[str] = field(default_factory=list)


def random_rational(rng: random.Random, num: int = 20, den: int = 9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def oracle_suite(n_max: int = 12, points: int = 20, seed: int = 0) -> SuiteResult:
    """P_n == n! det(x - A_n(y)) == det(y + x D_n + S_n) exactly."""
    rng = random.Random(seed)
    res = SuiteResult("oracle", True)
    for n in range(1, n_max + 1):
        p = kus_polynomial(n)
        fact = math.factorial(n)
        bad = 0
        for _ in range(points):
            x, y = random_rational(rng), random_rational(rng)
            a = eval_exact(p, x, y)
            b = fact * charpoly_eval(rational_A(n, y), x)
            c = det_oracle_S(n, x, y)
            if not a == b == c:
                bad += 1
        res.ok &= bad == 0
        res.lines.append(f"{'PASS' if bad == 0 else 'FAIL'} oracle n={n} points={points} mismatches={bad}")
    return res


def weyl_suite(N: int = 200, y: float = 2.0) -> SuiteResult:
    chk = verify_weyl(N, y)
    line = (
        f"{'PASS' if chk.ok else 'FAIL'} weyl N={N} y={y:g} "
        f"min_lower_margin={chk.lower_margins.min():.3e} min_upper_margin={chk.upper_margins.min():.3e}"
    )
    if not chk.ok:
        line += f" violating_index={chk.violating_index}"
    return SuiteResult("weyl", chk.ok, [line])


def interlace_suite(N: int = 200, m: int = 0, y: float = 0.5) -> SuiteResult:
    if m <= 0:
        m = math.ceil(N**0.25)
    chk = verify_interlacing(N, m, y)
    if chk.indices.size:
        margins = f"min_lower_margin={chk.lower_margins.min():.3e} min_upper_margin={chk.upper_margins.min():.3e}"
    else:
        margins = "empty index range"
    line = f"{'PASS' if chk.ok else 'FAIL'} interlace N={N} m={m} y={y:g} {margins}"
    if not chk.ok:
        line += f" violating_index={chk.violating_index}"
    return SuiteResult("interlace", chk.ok, [line])


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "oracle": oracle_suite,
    "weyl": weyl_suite,
    "interlace": interlace_suite,
}


def exit_code(results: List[SuiteResult]) -> int:
    """0 iff everything passed; otherwise the OR of the failing suites' bits."""
    code = 0
    for r in results:
        if not r.ok:
            code |= SUITE_BITS[r.name]
    return code
