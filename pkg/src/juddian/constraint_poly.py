"""Constraint polynomials P_n(X, Y) of the quantum Rabi model.

X = (2g)^2 and Y = Delta^2.  P_n is built exactly, with Python integers,
from the three-term recursion

    P_k = (k X + Y - k^2) P_{k-1} - k (k-1) (n-k+1) X P_{k-2},
    P_0 = 1,  P_1 = X + Y - 1,

and P_n is the last term.  Coefficients grow like (n!)^2, so exact
construction is capped (``DEFAULT_EXACT_CAP``); above the cap use the
tridiagonal route in :mod:`juddian.tridiag`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

Rational = Union[int, Fraction]

DEFAULT_EXACT_CAP = 64


class ExactCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BivariatePoly:
    """Sparse integer polynomial in (X, Y); keys are (x_degree, y_degree)."""

    coeffs: Dict[Tuple[int, int], int]
    total_degree: int = field(init=False)

    def __post_init__(self):
        clean = {k: int(c) for k, c in self.coeffs.items() if c}
        object.__setattr__(self, "coeffs", clean)
        deg = max((i + j for i, j in clean), default=-1)
        object.__setattr__(self, "total_degree", deg)

    def coeff(self, dx: int, dy: int) -> int:
        return self.coeffs.get((dx, dy), 0)

    def __call__(self, x: Rational, y: Rational) -> Fraction:
        return eval_exact(self, x, y)

    def as_x_rows(self) -> List[List[int]]:
        """Dense rows: ``rows[i][j]`` is the coefficient of X^i Y^j."""
        d = self.total_degree
        rows = [[0] * (d + 1) for _ in range(d + 1)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
        return rows

    def partial_x(self) -> "BivariatePoly":
        return BivariatePoly({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i})

    def partial_y(self) -> "BivariatePoly":
        return BivariatePoly({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j})

    def to_json(self, n: int) -> str:
        terms = [
            {"dx": i, "dy": j, "c": str(c)}
            for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        ]
        return json.dumps({"n": n, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> Tuple[int, "BivariatePoly"]:
        data = json.loads(text)
        coeffs = {(int(t["dx"]), int(t["dy"])): int(t["c"]) for t in data["terms"]}
        return int(data["n"]), cls(coeffs)


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense polynomial with rational coefficients, ``coeffs[k]`` multiplies t^k."""

    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, t: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def scale(self, factor: Rational) -> "UnivariatePoly":
        return UnivariatePoly(c * factor for c in self.coeffs)

    def to_json(self, n: int, var: str) -> str:
        return json.dumps({"n": n, "var": var, "coeffs": [str(c) for c in self.coeffs]})


def kus_polynomial(n: int, cap: int = DEFAULT_EXACT_CAP) -> BivariatePoly:
    """Return P_n(X, Y) with exact integer coefficients.

    Memory grows roughly like n^2 coefficients of ~2 n log10(n) digits;
    ``cap`` guards against accidental huge requests.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise ExactCapExceeded(f"n={n} exceeds the exact-arithmetic cap {cap}")
    prev: Dict[Tuple[int, int], int] = {(0, 0): 1}
    cur: Dict[Tuple[int, int], int] = {(1, 0): 1, (0, 1): 1, (0, 0): -1}
    for k in range(2, n + 1):
        nxt: Dict[Tuple[int, int], int] = {}
        for (i, j), c in cur.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) + k * c
            nxt[(i, j + 1)] = nxt.get((i, j + 1), 0) + c
            nxt[(i, j)] = nxt.get((i, j), 0) - k * k * c
        w = k * (k - 1) * (n - k + 1)
        for (i, j), c in prev.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) - w * c
        prev, cur = cur, {key: c for key, c in nxt.items() if c}
    return BivariatePoly(cur)


def eval_exact(p: BivariatePoly, x: Rational, y: Rational) -> Fraction:
    """Exact value of p at (x, y): Horner in X over Horner-in-Y coefficients."""
    x = Fraction(x)
    y = Fraction(y)
    rows = p.as_x_rows()
    acc = Fraction(0)
    for row in reversed(rows):
        inner = Fraction(0)
        for c in reversed(row):
            inner = inner * y + c
        acc = acc * x + inner
    return acc


def eval_float(p: BivariatePoly, x: float, y: float) -> float:
    rows = p.as_x_rows()
    acc = 0.0
    for row in reversed(rows):
        inner = 0.0
        for c in reversed(row):
            inner = inner * y + float(c)
        acc = acc * x + inner
    return acc


def restrict_to_y_axis(n: int, cap: int = DEFAULT_EXACT_CAP) -> UnivariatePoly:
    """P_n(0, Y) as a polynomial in Y."""
    p = kus_polynomial(n, cap)
    cs = [0] * (n + 1)
    for (i, j), c in p.coeffs.items():
        if i == 0:
            cs[j] = c
    return UnivariatePoly(cs)


def restrict_to_x_axis(n: int, cap: int = DEFAULT_EXACT_CAP) -> UnivariatePoly:
    """P_n(x, 0) as a polynomial in x."""
    p = kus_polynomial(n, cap)
    cs = [0] * (n + 1)
    for (i, j), c in p.coeffs.items():
        if j == 0:
            cs[i] = c
    return UnivariatePoly(cs)


def y_axis_product(n: int) -> UnivariatePoly:
    """Expanded prod_{m=1..n} (Y - m^2)."""
    cs = [1]
    for m in range(1, n + 1):
        shifted = [0] + cs
        cs = [s - m * m * c for s, c in zip(shifted, cs + [0])]
    return UnivariatePoly(cs)


def laguerre_coefficients(n: int) -> UnivariatePoly:
    """Exact coefficients (-1)^m C(n, m) / m! of the Laguerre polynomial L_n."""
    return UnivariatePoly(
        Fraction((-1) ** m * math.comb(n, m), math.factorial(m)) for m in range(n + 1)
    )


def restrict_to_line(p: BivariatePoly, a: Rational, b: Rational, c: Rational, d: Rational) -> UnivariatePoly:
    """p(a + b t, c + d t) as a polynomial in t."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    deg = p.total_degree
    xpow = _linear_powers(a, b, deg)
    ypow = _linear_powers(c, d, deg)
    out = [Fraction(0)] * (deg + 1)
    for (i, j), coef in p.coeffs.items():
        prod = _poly_mul(xpow[i], ypow[j])
        for k, v in enumerate(prod):
            out[k] += coef * v
    return UnivariatePoly(out)


def _linear_powers(a: Fraction, b: Fraction, deg: int) -> List[List[Fraction]]:
    powers = [[Fraction(1)]]
    for _ in range(deg):
        prev = powers[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        for k, v in enumerate(prev):
            nxt[k] += a * v
            nxt[k + 1] += b * v
        powers.append(nxt)
    return powers


def _poly_mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        if u:
            for j, v in enumerate(q):
                out[i + j] += u * v
    return out
