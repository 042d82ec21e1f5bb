"""Normalized Krawtchouk polynomials in exact rational arithmetic."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import mpmath

# |kr_k^(n)(x)| <= exp(-c k x / n) for 0 <= x, k <= n/2
UNIFORM_BOUND_BASE = Fraction(93, 100)
UniformBoundConstant = -2 * math.log(0.93)


@lru_cache(maxsize=1 << 18)
def kr(k: int, n: int, x: int) -> Fraction:
    """kr_k^(n)(x) = C(n,k)^-1 sum_j (-1)^j C(x,j) C(n-x,k-j)."""
    if n < 0 or not (0 <= k <= n) or not (0 <= x <= n):
        raise ValueError(f"kr needs 0 <= k, x <= n, got k={k}, n={n}, x={x}")
    s = 0
    for j in range(0, min(k, x) + 1):
        if k - j > n - x:
            continue
        term = math.comb(x, j) * math.comb(n - x, k - j)
        s += -term if j & 1 else term
    return Fraction(s, math.comb(n, k))


def kr_row(k: int, n: int) -> Tuple[Fraction, ...]:
    return tuple(kr(k, n, x) for x in range(n + 1))


def uniform_bound_holds(k: int, n: int, x: int, dps: int = 30) -> bool:
    """Compare |kr| with exp(-c k x / n) at the given decimal precision."""
    val = kr(k, n, x)
    with mpmath.workdps(dps):
        c = -2 * mpmath.log(mpmath.mpf(93) / 100)
        lhs = abs(mpmath.mpf(val.numerator) / val.denominator)
        rhs = mpmath.exp(-c * k * x / n) if n else mpmath.mpf(1)
        return lhs <= rhs


def bound_violations(n_max: int, dps: int = 30):
    """All (k, n, x) with 0 <= k, x <= n/2, n <= n_max violating the bound."""
    bad = []
    for n in range(0, n_max + 1):
        for k in range(0, n // 2 + 1):
            for x in range(0, n // 2 + 1):
                if not uniform_bound_holds(k, n, x, dps):
                    bad.append((k, n, x))
    return bad


def fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
