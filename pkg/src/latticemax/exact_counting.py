"""Exact lattice-point counts on spheres and balls in Z^d.

Everything here is big-integer arithmetic.  Shell counts come from the
coefficients of theta(z)^d, where theta(z) = 1 + 2 sum_k z^(k^2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

import numpy as np

from .errors import GuardError

BRUTE_MAX_D = 8
BRUTE_MAX_N = 30
CROSS_CHECK_MAX_D = 6


# ---------------------------------------------------------------- polynomials

def _nonzero(a):
    return [(i, x) for i, x in enumerate(a) if x]


def poly_mul(a: Sequence[int], b: Sequence[int], N: int) -> List[int]:
    """Product of two polynomials with nonnegative integer coefficients,
    truncated to degree N."""
    la, lb = min(len(a), N + 1), min(len(b), N + 1)
    if la == 0 or lb == 0:
        return [0] * (N + 1)
    na, nb = _nonzero(a[:la]), _nonzero(b[:lb])
    if len(na) * len(nb) <= 4 * (N + 1) or min(len(na), len(nb)) <= 8:
        out = [0] * (N + 1)
        for i, x in na:
            for j, y in nb:
                if i + j > N:
                    break
                out[i + j] += x * y
        return out
    # Kronecker substitution: pack into one big integer and multiply once.
    amax = max(x for _, x in na)
    bmax = max(y for _, y in nb)
    bits = amax.bit_length() + bmax.bit_length() + min(la, lb).bit_length() + 1
    w = (bits + 7) // 8
    A = int.from_bytes(b"".join(int(x).to_bytes(w, "little") for x in a[:la]), "little")
    B = int.from_bytes(b"".join(int(y).to_bytes(w, "little") for y in b[:lb]), "little")
    raw = (A * B).to_bytes((la + lb) * w, "little")
    m = min(N + 1, la + lb - 1)
    out = [int.from_bytes(raw[i * w:(i + 1) * w], "little") for i in range(m)]
    return out + [0] * (N + 1 - m)


def poly_pow(base: Sequence[int], e: int, N: int) -> List[int]:
    result = [1] + [0] * N
    sq = list(base[: N + 1]) + [0] * max(0, N + 1 - len(base))
    while e:
        if e & 1:
            result = poly_mul(result, sq, N)
        e >>= 1
        if e:
            sq = poly_mul(sq, sq, N)
    return result


def theta_base(N: int, K_cap: Optional[int] = None, k_min: int = 0) -> List[int]:
    """Coefficients of 1 + 2 sum_{k_min <= k <= K_cap} z^(k^2) up to degree N.

    With k_min > 0 the constant term is dropped.
    """
    c = [0] * (N + 1)
    if k_min == 0:
        c[0] = 1
    k = max(1, k_min)
    while k * k <= N and (K_cap is None or k <= K_cap):
        c[k * k] += 2
        k += 1
    return c


# ------------------------------------------------------------------- counts

@dataclass(frozen=True)
class ThetaCoeffs:
    d: int
    N: int
    K_cap: Optional[int]
    coeffs: tuple

    def __getitem__(self, n):
        return self.coeffs[n]


def theta_coeffs(d: int, N: int, K_cap: Optional[int] = None) -> ThetaCoeffs:
    """[z^0..z^N] of theta(z)^d (or of the K_cap-truncated theta)."""
    if d < 0 or N < 0:
        raise ValueError("d and N must be nonnegative")
    if K_cap is not None and K_cap < 0:
        raise ValueError("K_cap must be nonnegative")
    coeffs = poly_pow(theta_base(N, K_cap), d, N)
    return ThetaCoeffs(d, N, K_cap, tuple(coeffs))


def sphere_counts(d: int, nmax: int) -> List[int]:
    return list(theta_coeffs(d, nmax).coeffs)


def sphere_count(d: int, n: int) -> int:
    """Number of x in Z^d with |x|^2 = n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return theta_coeffs(d, n).coeffs[n]


def ball_count(d: int, n: int) -> int:
    """Number of x in Z^d with |x|^2 <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(theta_coeffs(d, n).coeffs)


def multinomial_rest(d: int, nbar: Sequence[int]) -> int:
    """d! / (n_1! ... n_K! (d - sum n)!)."""
    total = sum(nbar)
    if any(x < 0 for x in nbar) or total > d:
        raise ValueError(f"infeasible nbar {tuple(nbar)} for d={d}")
    out = math.factorial(d) // math.factorial(d - total)
    for x in nbar:
        out //= math.factorial(x)
    return out


def d_count(nbar: Sequence[int], d: int) -> int:
    """Size of the set of points with exactly n_k coordinates equal to +-k."""
    return 2 ** sum(nbar) * multinomial_rest(d, nbar)


def enumerate_dbar(nbar: Sequence[int], d: int, limit: int = 2_000_000) -> np.ndarray:
    """All points with exactly n_k coordinates of absolute value k, as rows."""
    size = d_count(nbar, d)
    if size > limit:
        raise GuardError("dbar-size", f"{size} points exceeds limit {limit}")
    K = len(nbar)
    supports = []

    def assign(k, free, chosen):
        if k == K:
            supports.append(list(chosen))
            return
        for I in itertools.combinations(free, nbar[k]):
            rest = [i for i in free if i not in I]
            chosen.append(I)
            assign(k + 1, rest, chosen)
            chosen.pop()

    assign(0, list(range(d)), [])
    m = sum(nbar)
    signs = np.array(list(itertools.product((1, -1), repeat=m)), dtype=np.int64).reshape(2 ** m, m)
    out = np.zeros((size, d), dtype=np.int64)
    row = 0
    for sup in supports:
        idx = [i for I in sup for i in I]
        mags = [k + 1 for k, I in enumerate(sup) for _ in I]
        block = signs * np.array(mags, dtype=np.int64)
        out[row:row + len(signs)][:, idx] = block
        row += len(signs)
    return out


def _shell_recursive(d: int, n: int) -> Iterator[tuple]:
    if d == 0:
        if n == 0:
            yield ()
        return
    if d == 1:
        r = math.isqrt(n)
        if r * r == n:
            yield (r,)
            if r:
                yield (-r,)
        return
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        for rest in _shell_recursive(d - 1, n - x * x):
            yield (x,) + rest


def _guard_brute(d, n):
    if d > BRUTE_MAX_D or n > BRUTE_MAX_N:
        raise GuardError(
            "brute-force-shell",
            f"d={d}, n={n} exceeds d<={BRUTE_MAX_D}, n<={BRUTE_MAX_N}",
        )
    if d < 0 or n < 0:
        raise ValueError("d and n must be nonnegative")


def shell_points(d: int, n: int) -> np.ndarray:
    """All points of Z^d with |x|^2 = n, by direct enumeration."""
    _guard_brute(d, n)
    pts = list(_shell_recursive(d, n))
    return np.array(pts, dtype=np.int64).reshape(len(pts), d)


def brute_force_shell(d: int, n: int) -> int:
    _guard_brute(d, n)
    return sum(1 for _ in _shell_recursive(d, n))


# ------------------------------------------------------------- concentration

@dataclass
class ConcentrationReport:
    d: int
    n: int
    K: int
    a: int
    shell_total: int
    small_mass_violations: int
    few_ones_violations: int
    cross_checked: bool = False
    fractions: dict = field(default_factory=dict)

    def __post_init__(self):
        tot = self.shell_total
        self.fractions = {
            "small_mass": float(Fraction(self.small_mass_violations, tot)) if tot else 0.0,
            "few_ones": float(Fraction(self.few_ones_violations, tot)) if tot else 0.0,
        }

    def to_dict(self):
        return {
            "d": self.d, "n": self.n, "K": self.K, "a": self.a,
            "shell_total": str(self.shell_total),
            "small_mass_violations": str(self.small_mass_violations),
            "few_ones_violations": str(self.few_ones_violations),
            "fraction_small_mass": self.fractions["small_mass"],
            "fraction_few_ones": self.fractions["few_ones"],
            "cross_checked": self.cross_checked,
        }


def small_mass_count(d: int, n: int, K: int, a: int) -> int:
    """Points on the n-shell with sum_{|x_i|<=K} x_i^2 <= n - a.

    Coordinates split into small ones (|x_i| <= K, zero included) and large
    ones; j large coordinates carry the remaining mass n - s.
    """
    if n - a < 0:
        return 0
    big = theta_base(n, None, k_min=K + 1)  # 2 sum_{k>K} w^(k^2)
    small = theta_base(n, K)
    jmax = min(d, n // ((K + 1) ** 2))
    gpow = [[1] + [0] * n]
    for _ in range(jmax):
        gpow.append(poly_mul(gpow[-1], big, n))
    hk = poly_pow(small, d - jmax, n)
    total = 0
    for j in range(jmax, -1, -1):
        inner = sum(gpow[j][n - s] * hk[s] for s in range(0, n - a + 1))
        total += math.comb(d, j) * inner
        if j:
            hk = poly_mul(hk, small, n)
    return total


def few_ones_count(d: int, n: int) -> int:
    """Points on the n-shell with at most n/2 coordinates equal to +-1.

    The coordinates equal to +-1 are marked separately: m of them leave
    mass n - m for the other d - m coordinates, which avoid +-1.
    """
    no_ones = theta_base(n)
    if n >= 1:
        no_ones[1] = 0
    mmax = min(d, n // 2)
    q = poly_pow(no_ones, d - mmax, n)
    total = 0
    for m in range(mmax, -1, -1):
        total += math.comb(d, m) * 2 ** m * q[n - m]
        if m:
            q = poly_mul(q, no_ones, n)
    return total


def _brute_concentration(d, n, K, a):
    pts = shell_points(d, n)
    if len(pts) == 0:
        return 0, 0
    absx = np.abs(pts)
    small_mass = np.where(absx <= K, pts * pts, 0).sum(axis=1)
    ones = (absx == 1).sum(axis=1)
    return int((small_mass <= n - a).sum()), int((2 * ones <= n).sum())


def concentration_report(d: int, n: int, K: int, a: int) -> ConcentrationReport:
    if min(d, n, K) < 0 or a < 0:
        raise ValueError("d, n, K, a must be nonnegative")
    total = sphere_count(d, n)
    sm = small_mass_count(d, n, K, a)
    fo = few_ones_count(d, n)
    checked = False
    if d <= CROSS_CHECK_MAX_D and n <= BRUTE_MAX_N:
        bsm, bfo = _brute_concentration(d, n, K, a)
        if (bsm, bfo) != (sm, fo):
            raise RuntimeError(
                f"concentration cross-check failed at d={d}, n={n}, K={K}, a={a}: "
                f"series ({sm}, {fo}) vs enumeration ({bsm}, {bfo})"
            )
        checked = True
    return ConcentrationReport(d, n, K, a, total, sm, fo, checked)
