"""Saddle-point asymptotics for lattice points on high-dimensional spheres.

The estimate for the n-shell in Z^d is h(r)^d / (r^n sqrt(n)), where h is
the theta series and r solves r h'(r) / h(r) = n / d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .series import Series

TAIL_TOL = 1e-30


class ThetaFunction:
    """h(r) = 1 + 2 sum_{1<=k<=K} r^(k^2) on (0, 1), K infinite by default."""

    def __init__(self, K_cap: Optional[int] = None):
        self.K_cap = K_cap

    def _terms(self, r: float) -> int:
        """Number of k to keep so the dropped tail is below TAIL_TOL."""
        if self.K_cap is not None:
            return self.K_cap
        k = 1
        while 2 * r ** (k * k) / (1 - r) >= TAIL_TOL:
            k += 1
        return k - 1

    def derivs(self, r: float):
        """(h(r) - 1, h'(r), h''(r))."""
        if not 0 <= r < 1:
            raise ValueError("r must lie in [0, 1)")
        s0 = s1 = s2 = 0.0
        if r == 0:
            return 0.0, 2.0 if (self.K_cap is None or self.K_cap >= 1) else 0.0, 0.0
        for k in range(1, self._terms(r) + 1):
            e = k * k
            t = r ** e
            s0 += 2 * t
            s1 += 2 * e * t / r
            s2 += 2 * e * (e - 1) * t / (r * r)
        return s0, s1, s2

    def __call__(self, r: float) -> float:
        return 1.0 + self.derivs(r)[0]

    def log(self, r: float) -> float:
        return math.log1p(self.derivs(r)[0])

    def H(self, r: float) -> float:
        """r h'(r) / h(r)."""
        m1, d1, _ = self.derivs(r)
        return r * d1 / (1 + m1)

    def sup_H(self) -> float:
        """Limit of H as r -> 1."""
        if self.K_cap is None:
            return math.inf
        return sum(2 * k * k for k in range(1, self.K_cap + 1)) / (1 + 2 * self.K_cap)


@dataclass(frozen=True)
class SaddleSolution:
    alpha: float
    r: float
    h_at_r: float
    hprime_at_r: float
    beta_second: float


def solve_saddle(alpha: float, K_cap: Optional[int] = None) -> SaddleSolution:
    """Solve r h'(r)/h(r) = alpha by bisection, then polish with Newton."""
    theta = ThetaFunction(K_cap)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if alpha >= theta.sup_H():
        raise ValueError(f"alpha={alpha} is not attained by the truncated theta function")
    lo, hi = 0.0, 0.5
    while theta.H(hi) < alpha:
        lo, hi = hi, (1 + hi) / 2
    while hi - lo > 1e-15:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if theta.H(mid) < alpha:
            lo = mid
        else:
            hi = mid
    r = (lo + hi) / 2

    def residual_and_slope(x):
        m1, d1, d2 = theta.derivs(x)
        h = 1 + m1
        q = d1 / h
        return x * q - alpha, q + x * (d2 / h - q * q)

    res, slope = residual_and_slope(r)
    for _ in range(2):
        cand = r - res / slope
        if not 0 < cand < 1:
            break
        cres, cslope = residual_and_slope(cand)
        if abs(cres) >= abs(res):
            break
        r, res, slope = cand, cres, cslope
    if abs(res) > 1e-12 * alpha:
        raise ArithmeticError(f"saddle residual {res:g} too large at alpha={alpha}")
    m1, d1, d2 = theta.derivs(r)
    h = 1 + m1
    beta = alpha / r ** 2 + d2 / h - (d1 / h) ** 2
    return SaddleSolution(alpha, r, h, d1, beta)


def log_estimate(n: int, d: int) -> float:
    """ln of h(r)^d / (r^n sqrt(n)) at the saddle point alpha = n/d."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    sol = solve_saddle(n / d)
    return d * math.log1p(sol.h_at_r - 1) - n * math.log(sol.r) - 0.5 * math.log(n)


def log_exp_form(n: int, d: int, terms: int = 3) -> float:
    """n ln 2 + n - n ln(alpha) - ln(n)/2 + sum_{1<=k<=terms} b_k n alpha^k."""
    alpha = n / d
    b = b_coeffs(terms)
    tail = sum(float(b[k]) * n * alpha ** k for k in range(1, terms + 1))
    return n * math.log(2) + float(b[0]) * n - n * math.log(alpha) - 0.5 * math.log(n) + tail


def binom_estimate(n: int, d: int) -> float:
    """ln(2^n C(d, n)) + n alpha^3 / 8."""
    if not 0 <= n <= d:
        raise ValueError("need 0 <= n <= d")
    return n * math.log(2) + math.log(math.comb(d, n)) + n * (n / d) ** 3 / 8


# --------------------------------------------------------- exact expansions

def _theta_series(prec: int) -> Series:
    c = [0] * prec
    c[0] = 1
    k = 1
    while k * k < prec:
        c[k * k] = 2
        k += 1
    return Series(c, prec)


def inversion_coeffs(m: int) -> List[Fraction]:
    """a_1..a_m with r(alpha) = sum a_k alpha^k inverting r h'(r)/h(r).

    Lagrange inversion: a_k = [z^(k-1)] (h/h')^k / k.
    """
    if m < 1:
        return []
    prec = m
    h = _theta_series(prec + 1)
    hp = h.derivative()  # precision prec
    ratio = Series(h.c[:prec], prec) / hp
    out = []
    power = Series([1], prec)
    for k in range(1, m + 1):
        power = power * ratio
        out.append(power[k - 1] / k)
    return out


def saddle_series(m: int) -> Series:
    """r(alpha) as a series known modulo alpha^(m+1)."""
    return Series([0] + inversion_coeffs(m), m + 1)


def b_coeffs(m: int) -> List[Fraction]:
    """b_0..b_m in alpha^-1 ln h(r(alpha)) - ln(2 r(alpha)/alpha) = sum b_k alpha^k."""
    if m < 0:
        return []
    prec = m + 2
    r = saddle_series(m + 1)  # modulo alpha^(m+2)
    h_of_r = _theta_series(prec).compose(r)
    first = h_of_r.log().shift_down(1)  # alpha^-1 ln h(r), modulo alpha^(m+1)
    two_r_over_alpha = (r * 2).shift_down(1)  # constant term 2 a_1 = 1
    second = two_r_over_alpha.log()
    diff = first - second
    return [diff[k] for k in range(m + 1)]
