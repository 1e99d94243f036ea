"""Exact isolation of the real roots of a rational polynomial in an open
interval (Descartes' rule of signs with bisection)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

Interval = Tuple[Fraction, Fraction]


def _primitive(cs: Sequence[Fraction]) -> List[int]:
    """Integer polynomial with the same roots; coefficients low to high."""
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _trim(cs: List) -> List:
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return cs


def _divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        coef = a[-1] / lead
        q[shift] = coef
        for i, v in enumerate(b):
            a[i + shift] -= coef * v
        a.pop()
        _trim(a)
        if len(a) < len(b):
            break
    return q, a


def _gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, _trim(list(r)) if r else [Fraction(0)]
    return [c / a[-1] for c in a]


def squarefree(cs: Sequence) -> List[int]:
    p = [Fraction(c) for c in cs]
    _trim(p)
    dp = [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]
    g = _gcd(p, dp)
    if len(g) > 1:
        p, _ = _divmod(p, g)
    return _primitive(p)


def _taylor_shift_1(p: List[int]) -> List[int]:
    """Coefficients of p(t + 1)."""
    a = list(p)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _variations(cs: Sequence[int]) -> int:
    signs = [c > 0 for c in cs if c]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _roots_01_upper_bound(p: List[int]) -> int:
    """Descartes bound for the number of roots of p in (0, 1)."""
    return _variations(_taylor_shift_1(p[::-1]))


def _eval(p: Sequence[int], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def isolate_roots(cs: Sequence, lo: Fraction, hi: Fraction, max_depth: int = 200) -> List[Interval]:
    """Disjoint intervals, each holding exactly one root of the polynomial in (lo, hi).

    Degenerate intervals (a, a) mark roots hit exactly at a bisection point.
    Multiple roots are counted once.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    p = squarefree(cs)
    if len(p) <= 1:
        return []
    # map (lo, hi) -> (0, 1): q(t) = p(lo + (hi - lo) t)
    q = _compose_affine(p, lo, hi - lo)
    found: List[Interval] = []
    stack = [(q, Fraction(0), Fraction(1), 0)]
    while stack:
        poly, a, b, depth = stack.pop()
        # roots at t = 0 of the local poly are interval endpoints, handled by the parent
        while poly[0] == 0:
            poly = poly[1:]
        v = _roots_01_upper_bound(poly)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b))
            continue
        if depth >= max_depth:
            raise RuntimeError("root isolation did not terminate; polynomial not squarefree?")
        d = len(poly) - 1
        left = [c * 2 ** (d - i) for i, c in enumerate(poly)]  # 2^d poly(t/2)
        right = _taylor_shift_1(left)  # 2^d poly((t+1)/2)
        mid = (a + b) / 2
        if right[0] == 0:
            found.append((mid, mid))
        stack.append((left, a, mid, depth + 1))
        stack.append((right, mid, b, depth + 1))
    out = sorted((lo + (hi - lo) * a, lo + (hi - lo) * b) for a, b in found)
    return out


def _compose_affine(p: Sequence[int], a: Fraction, b: Fraction) -> List[int]:
    """Primitive integer polynomial proportional to p(a + b t)."""
    out = [Fraction(0)] * len(p)
    # Horner on polynomials in t
    for c in reversed(p):
        nxt = [Fraction(0)] * len(p)
        for i, v in enumerate(out):
            if v:
                nxt[i] += a * v
                if i + 1 < len(nxt):
                    nxt[i + 1] += b * v
        nxt[0] += c
        out = nxt
    return _primitive(out)


def refine_root(cs: Sequence, interval: Interval, width: Fraction = Fraction(1, 2**60)) -> Fraction:
    """Bisect an isolating interval down to ``width`` and return its midpoint.

    The interval's endpoints may themselves be roots (e.g. the lower end of
    the search range); then Descartes parity decides which half to keep.
    """
    a, b = interval
    if a == b:
        return a
    p = squarefree(cs)
    fa, fb = _eval(p, a), _eval(p, b)
    while b - a > width:
        m = (a + b) / 2
        fm = _eval(p, m)
        if fm == 0:
            return m
        if fa != 0 and (fm > 0) != (fa > 0):
            b, fb = m, fm
        elif fb != 0 and (fm > 0) != (fb > 0):
            a, fa = m, fm
        elif fa != 0 and fb != 0:
            raise ValueError("interval does not bracket a sign change")
        elif _count_in(p, a, m) % 2 == 1:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return (a + b) / 2


def _count_in(p: Sequence[int], a: Fraction, b: Fraction) -> int:
    q = _compose_affine(p, a, b - a)
    while q[0] == 0:
        q = q[1:]
    return _roots_01_upper_bound(q)


def real_roots_in(cs: Sequence, lo, hi, width: Fraction = Fraction(1, 2**60)) -> List[Fraction]:
    """Sorted real roots in the open interval (lo, hi), each to within ``width``."""
    return [refine_root(cs, iv, width) for iv in isolate_roots(cs, lo, hi)]
