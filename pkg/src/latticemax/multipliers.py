"""Fourier multipliers of the averaging operators over the sets D_nbar.

For nbar = (n_1, ..., n_K), D_nbar is the set of points with exactly n_k
coordinates equal to +-k and all others zero.  Its normalized indicator has
the symbol

    beta_nbar(xi) = average over disjoint I_1..I_K with |I_k| = n_k
                    of prod_k prod_{i in I_k} cos(2 pi k xi_i),

with the convention e(s) = exp(-2 pi i s).  Indices k in nbar and in the
sets U, V below are 1-based, matching the value +-k they describe.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GuardError
from .exact_counting import enumerate_dbar, shell_points
from .krawtchouk import UniformBoundConstant

BRUTE_MAX_D = 10
BRUTE_MAX_MASS = 4
FORMULA_MAX_J = 12
SUBSET_ENUM_MAX = 14


@dataclass(frozen=True)
class TorusPoint:
    xi: np.ndarray

    @property
    def d(self) -> int:
        return len(self.xi)

    @property
    def norm_sq(self) -> float:
        """sum sin^2(pi xi_i)."""
        return float(np.sum(np.sin(np.pi * self.xi) ** 2))

    @property
    def shifted_norm_sq(self) -> float:
        """|xi + 1/2|^2 = sum cos^2(pi xi_i)."""
        return float(np.sum(np.cos(np.pi * self.xi) ** 2))


def norm_sq(xi) -> float:
    return float(np.sum(np.sin(np.pi * np.asarray(xi, dtype=float)) ** 2))


def _support(xi, J):
    xi = np.asarray(xi, dtype=float)
    if J is None:
        return xi
    return xi[list(J)]


def beta_eval(nbar: Sequence[int], xi, J: Optional[Iterable[int]] = None) -> float:
    """beta^J_nbar(xi) by dynamic programming over the coordinates of J.

    f_i(m) is the average over admissible supports inside the first i
    coordinates; adding coordinate i either leaves it out (weight
    (i - |m|)/i) or puts it in class k (weight m_k/i, factor cos(2 pi k xi)).
    Every update is a convex combination, so nothing overflows.
    """
    nbar = tuple(int(x) for x in nbar)
    x = _support(xi, J)
    size = len(x)
    if any(v < 0 for v in nbar):
        raise ValueError("nbar entries must be nonnegative")
    if sum(nbar) > size:
        raise ValueError(f"sum(nbar)={sum(nbar)} exceeds |J|={size}")
    K = len(nbar)
    if K == 0 or sum(nbar) == 0:
        return 1.0
    shape = tuple(v + 1 for v in nbar)
    grids = np.indices(shape, dtype=float)
    mass = grids.sum(axis=0)
    f = np.zeros(shape)
    f[(0,) * K] = 1.0
    ks = np.arange(1, K + 1)
    for i in range(1, size + 1):
        c = np.cos(2 * np.pi * ks * x[i - 1])
        new = np.clip(i - mass, 0, None) / i * f
        for k in range(K):
            if nbar[k] == 0:
                continue
            hi = [slice(None)] * K
            lo = [slice(None)] * K
            hi[k] = slice(1, None)
            lo[k] = slice(None, -1)
            hi, lo = tuple(hi), tuple(lo)
            new[hi] += grids[k][hi] / i * c[k] * f[lo]
        f = new
    return float(f[nbar])


def beta_bruteforce(nbar: Sequence[int], xi) -> float:
    """Average of e(x . xi) over an explicit listing of D_nbar."""
    xi = np.asarray(xi, dtype=float)
    d = len(xi)
    if d > BRUTE_MAX_D or sum(nbar) > BRUTE_MAX_MASS:
        raise GuardError(
            "beta-bruteforce",
            f"d={d}, sum(nbar)={sum(nbar)} exceeds d<={BRUTE_MAX_D}, sum<={BRUTE_MAX_MASS}",
        )
    pts = enumerate_dbar(nbar, d)
    vals = np.exp(-2j * np.pi * (pts @ xi))
    m = vals.mean()
    return float(m.real)


# ------------------------------------------------------------ semigroups

def semigroup_symbol(k: int, t: float, eps: int, xi, d: Optional[int] = None) -> float:
    """p_t(k xi + eps/2) = exp(-(t/d) sum sin^2(pi (k xi_i + eps/2)))."""
    xi = np.asarray(xi, dtype=float)
    d = len(xi) if d is None else d
    s = np.sum(np.sin(np.pi * (k * xi + eps / 2)) ** 2)
    return float(np.exp(-t / d * s))


def tilde_symbol(t: float, xi, d: Optional[int] = None) -> float:
    """exp(-(t/d) min(|xi|^2, |xi + 1/2|^2))."""
    xi = np.asarray(xi, dtype=float)
    d = len(xi) if d is None else d
    s = np.sum(np.sin(np.pi * xi) ** 2)
    c = np.sum(np.cos(np.pi * xi) ** 2)
    return float(np.exp(-t / d * min(s, c)))


# ------------------------------------------------------------ differences

def _minus_two(nbar, S):
    out = list(nbar)
    for k in S:
        out[k - 1] -= 2
    return tuple(out)


def delta_beta(nbar: Sequence[int], U: Iterable[int], xi, J=None) -> float:
    """Delta^U beta: alternating sum over S in U of beta_{nbar - 2 1_S}."""
    U = sorted(set(U))
    for k in U:
        if nbar[k - 1] < 2:
            raise ValueError(f"difference in direction {k} needs n_{k} >= 2")
    terms = []
    for r in range(len(U) + 1):
        for S in itertools.combinations(U, r):
            terms.append((-1) ** r * beta_eval(_minus_two(nbar, S), xi, J))
    return math.fsum(terms)


def delta_beta_formula(nbar: Sequence[int], U: Iterable[int], xi, J=None) -> float:
    """Delta^U beta written as an average over removed coordinate pairs.

    For each k in U a pair x_k != y_k of coordinates is removed (all distinct),
    weighted by sin^2(k pi xi_x) cos^2(k pi xi_y), and beta is taken on the
    remaining coordinates with n_k lowered by 2.
    """
    U = sorted(set(U))
    xi = np.asarray(xi, dtype=float)
    Jl = list(range(len(xi))) if J is None else list(J)
    size = len(Jl)
    if len(U) >= 2 and size > FORMULA_MAX_J:
        raise GuardError("delta-formula", f"|J|={size} exceeds {FORMULA_MAX_J} for |U|>=2")
    for k in U:
        if nbar[k - 1] < 2:
            raise ValueError(f"difference in direction {k} needs n_{k} >= 2")
    if sum(nbar) > size:
        raise ValueError("sum(nbar) exceeds |J|")
    lowered = _minus_two(nbar, U)
    m = 2 * len(U)
    if m == 0:
        return beta_eval(nbar, xi, Jl)
    falling = math.perm(size, m)
    total = []
    for tup in itertools.permutations(Jl, m):
        w = 1.0
        for idx, k in enumerate(U):
            xa, ya = tup[2 * idx], tup[2 * idx + 1]
            w *= np.sin(k * np.pi * xi[xa]) ** 2 * np.cos(k * np.pi * xi[ya]) ** 2
        if w == 0.0:
            continue
        rest = [i for i in Jl if i not in tup]
        total.append(w * beta_eval(lowered, xi, rest))
    return (-4.0) ** len(U) / falling * math.fsum(total)


# ------------------------------------------------------- spherical symbol

@dataclass(frozen=True)
class SphericalSplit:
    value: float
    main: Optional[float]
    remainder: Optional[float]
    remainder_mass: Optional[float]


def spherical_symbol(n: int, d: int, xi, K: Optional[int] = None, a: Optional[int] = None) -> SphericalSplit:
    """Average of e(x . xi) over the n-shell of Z^d.

    With K and a given, the shell splits into a remainder set (few +-1
    coordinates, or small-coordinate mass below n - a while having many
    +-1 coordinates) and the rest; both partial averages are returned,
    normalized by the full shell size.
    """
    xi = np.asarray(xi, dtype=float)
    if len(xi) != d:
        raise ValueError("xi must have length d")
    pts = shell_points(d, n)
    if len(pts) == 0:
        raise ValueError(f"the {n}-shell of Z^{d} is empty")
    vals = np.exp(-2j * np.pi * (pts @ xi)).real
    total = float(vals.mean())
    if K is None or a is None:
        return SphericalSplit(total, None, None, None)
    absx = np.abs(pts)
    ones = (absx == 1).sum(axis=1)
    small = np.where(absx <= K, pts * pts, 0).sum(axis=1)
    in_r = ((small < n - a) & (2 * ones >= n)) | (2 * ones < n)
    rem = float(vals[in_r].sum() / len(pts))
    return SphericalSplit(total, total - rem, rem, float(in_r.mean()))


# ------------------------------------------------------------- bound suites

SUITES = ("beta-decay", "semigroup-comparison", "dyadic-sum", "subset-average", "difference-decay")
EXPLICIT = {"beta-decay", "dyadic-sum", "subset-average"}


@dataclass
class BoundReport:
    suite: str
    samples: int
    violations: int
    worst_ratio: float
    fitted_constant: Optional[float]
    seed: int

    def to_dict(self):
        return {
            "suite": self.suite, "samples": self.samples, "violations": self.violations,
            "worst_ratio": self.worst_ratio, "fitted_constant": self.fitted_constant,
            "seed": self.seed,
        }


def _sample_xi(rng, d, K=1):
    """Uniform points mixed with points near the resonant set {0, 1/2}/j."""
    mode = rng.integers(3)
    if mode == 0:
        return rng.random(d)
    j = int(rng.integers(1, K + 1))
    base = rng.choice([0.0, 0.5], size=d) / j
    scale = 10.0 ** rng.uniform(-4, -1)
    return (base + scale * rng.standard_normal(d)) % 1.0


def dyadic_sum(x: float, eps: int) -> float:
    """sum over n with n + eps a power of two (>= 2) of min(nx, 1/(nx))^2."""
    if x <= 0:
        return 0.0
    terms = []
    m = 1
    while True:
        n = 2 ** m - eps
        y = n * x
        if y > 0:
            terms.append(min(y, 1 / y) ** 2)
        if y > 1e12:
            break
        m += 1
    return math.fsum(terms)


def _suite_dyadic(samples, rng):
    grid = np.logspace(-8, 8, samples)
    ratios = [dyadic_sum(float(x), e) / 10.0 for x in grid for e in (0, 1)]
    ratios.append(dyadic_sum(0.0, 0) / 10.0)
    return ratios


def _suite_beta_decay(samples, rng):
    c = UniformBoundConstant
    ratios = []
    for _ in range(samples):
        K = int(rng.integers(1, 4))
        size = int(rng.integers(2, 41))
        while True:
            nbar = [int(v) for v in rng.integers(0, size // (K + 1) + 1, size=K)]
            if sum(nbar) + max(nbar) <= size:
                break
        xi = _sample_xi(rng, size, K)
        lhs = abs(beta_eval(nbar, xi))
        expo = 0.0
        for j, nj in enumerate(nbar, start=1):
            s = np.sum(np.sin(j * np.pi * xi) ** 2)
            co = np.sum(np.cos(j * np.pi * xi) ** 2)
            expo += c * nj / (80 * K * size) * min(s, co)
        ratios.append(lhs / (6 * math.exp(-expo)))
    return ratios


def _suite_subset(samples, rng):
    ratios = []
    for _ in range(samples):
        m = int(rng.integers(1, SUBSET_ENUM_MAX + 1))
        k = int(rng.integers(0, m + 1))
        delta0 = float(rng.uniform(0.01, 0.99))
        u = rng.uniform(0, (1 - delta0) / 2, size=m)
        if rng.random() < 0.3:
            u[:] = (1 - delta0) / 2
        sums = [u[list(I)].sum() for I in itertools.combinations(range(m), k)]
        lhs = float(np.mean(np.exp(-np.array(sums))))
        rhs = 3 * math.exp(-delta0 * k / (20 * m) * u.sum())
        ratios.append(lhs / rhs)
    return ratios


def _resonance(xi, K):
    """A(xi) and |j xi + 1_A(j)/2|^2 for j = 1..K."""
    A, norms = set(), {}
    for j in range(1, K + 1):
        s = norm_sq(j * xi)
        c = norm_sq(j * xi + 0.5)
        if c <= s:
            A.add(j)
        norms[j] = c if j in A else s
    return A, norms


def comparison_sides(nbar, V, xi):
    """(lhs, rhs) of the alternating-sum estimate; rhs without constant."""
    d = len(xi)
    K = len(nbar)
    A, norms = _resonance(xi, K)
    V = sorted(V)
    eps = {j: ((-1) ** nbar[j - 1] if j in A else 1) for j in V}
    terms = []
    for r in range(len(V) + 1):
        for Uset in itertools.combinations(V, r):
            w = 1.0
            for j in V:
                if j not in Uset:
                    w *= -eps[j] * tilde_symbol(nbar[j - 1], j * xi, d)
            nU = tuple(nbar[j - 1] if (j in Uset) else 0 for j in range(1, K + 1))
            terms.append(w * beta_eval(nU, xi))
    lhs = abs(math.fsum(terms))
    rhs = 1.0
    for j in V:
        s = nbar[j - 1] / d * norms[j]
        rhs *= min(s, 1 / s) if s > 0 else 0.0
    return lhs, rhs


def _ratio(lhs, rhs):
    if lhs <= 1e-13:
        return 0.0
    return lhs / rhs if rhs > 0 else math.inf


def _suite_comparison(samples, rng):
    ratios = []
    for _ in range(samples):
        K = int(rng.integers(1, 3))
        d = int(rng.integers(2 * K, 25))
        nbar = [int(v) for v in rng.integers(0, d // (2 * K) + 1, size=K)]
        V = [j for j in range(1, K + 1) if rng.random() < 0.7] or [1]
        xi = _sample_xi(rng, d, K)
        ratios.append(_ratio(*comparison_sides(nbar, V, xi)))
    return ratios


def difference_sides(nbar, U, xi):
    d = len(xi)
    A, norms = _resonance(xi, len(nbar))
    lhs = abs(delta_beta(nbar, U, xi))
    rhs = 1.0
    for k in U:
        s = nbar[k - 1] / d * norms[k]
        rhs *= (min(s, 1 / s) if s > 0 else 0.0) / nbar[k - 1]
    return lhs, rhs


def _suite_difference(samples, rng):
    ratios = []
    for _ in range(samples):
        K = int(rng.integers(1, 3))
        d = int(rng.integers(4 * K, 41))
        cap = d // (2 * K)
        if cap < 2:
            continue
        nbar = [int(v) for v in rng.integers(0, cap + 1, size=K)]
        U = [k for k in range(1, K + 1) if rng.random() < 0.7] or [1]
        for k in U:
            nbar[k - 1] = max(nbar[k - 1], 2)
        xi = _sample_xi(rng, d, K)
        ratios.append(_ratio(*difference_sides(nbar, U, xi)))
    return ratios


def check_bounds(suite: str, samples: int, seed: int) -> BoundReport:
    """Run one inequality suite on seeded samples.

    Suites with explicit constants count violations (ratio > 1).  The
    others only report the smallest constant consistent with the samples.
    """
    runners = {
        "beta-decay": _suite_beta_decay, "semigroup-comparison": _suite_comparison, "dyadic-sum": _suite_dyadic,
        "subset-average": _suite_subset, "difference-decay": _suite_difference,
    }
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    rng = np.random.default_rng(seed)
    ratios = runners[suite](samples, rng)
    worst = max(ratios) if ratios else 0.0
    if suite in EXPLICIT:
        viol = sum(1 for r in ratios if r > 1.0)
        return BoundReport(suite, samples, viol, worst, None, seed)
    return BoundReport(suite, samples, 0, worst, worst, seed)
