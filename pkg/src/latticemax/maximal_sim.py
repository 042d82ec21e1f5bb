"""Finite-torus experiments with averaging operators and maximal functions.

Functions live on (Z/MZ)^d.  Kernels are applied by FFT, which is exact
circular convolution; a finitely supported kernel equals its Z^d version
only when M > 2 max|coordinate| of its support, which make_kernel enforces.
Ratios measured here are finite-torus numbers and say nothing by themselves
about dimension-free bounds on Z^d.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import GuardError
from .exact_counting import enumerate_dbar, shell_points

CAVEAT = "finite-torus empirical ratio; not evidence of a bound on Z^d"
MAX_GRID = 2 ** 22


@dataclass
class TorusFunction:
    values: np.ndarray

    @property
    def d(self) -> int:
        return self.values.ndim

    @property
    def M(self) -> int:
        return self.values.shape[0]

    def l2(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)))


@dataclass(frozen=True)
class KernelSpec:
    kind: str
    d: int
    M: int
    n: Optional[int] = None
    nbar: Optional[Tuple[int, ...]] = None
    k: Optional[int] = None
    t: Optional[float] = None
    eps: int = 0

    @classmethod
    def sphere(cls, n, d, M):
        return cls("sphere", d, M, n=n)

    @classmethod
    def dbar(cls, nbar, d, M):
        return cls("dbar", d, M, nbar=tuple(nbar))

    @classmethod
    def semigroup(cls, k, t, eps, d, M):
        return cls("semigroup", d, M, k=k, t=float(t), eps=int(eps))


def _check_grid(d, M):
    if M < 1 or d < 1:
        raise ValueError("d and M must be positive")
    if M ** d > MAX_GRID:
        raise GuardError("torus-size", f"M^d = {M ** d} exceeds {MAX_GRID}")


def frequency_grid(d: int, M: int) -> np.ndarray:
    """Array of shape (M,)*d + (d,) holding xi = m / M."""
    axes = np.meshgrid(*([np.arange(M) / M] * d), indexing="ij")
    return np.stack(axes, axis=-1)


def _points_kernel(pts: np.ndarray, d: int, M: int, label: str) -> np.ndarray:
    radius = int(np.abs(pts).max()) if pts.size else 0
    if M <= 2 * radius:
        raise GuardError("aliasing", f"{label} has radius {radius}; need M > {2 * radius}, got M={M}")
    ker = np.zeros((M,) * d)
    idx = tuple((pts % M).T)
    np.add.at(ker, idx, 1.0 / len(pts))
    return ker


def make_kernel(spec: KernelSpec) -> np.ndarray:
    d, M = spec.d, spec.M
    _check_grid(d, M)
    if spec.kind == "sphere":
        pts = shell_points(d, spec.n)
        if len(pts) == 0:
            raise ValueError(f"the {spec.n}-shell of Z^{d} is empty")
        return _points_kernel(pts, d, M, f"sphere n={spec.n}")
    if spec.kind == "dbar":
        pts = enumerate_dbar(spec.nbar, d)
        return _points_kernel(pts, d, M, f"dbar {spec.nbar}")
    if spec.kind == "semigroup":
        xi = frequency_grid(d, M)
        s = np.sum(np.sin(np.pi * (spec.k * xi + spec.eps / 2)) ** 2, axis=-1)
        symbol = np.exp(-spec.t / d * s)
        return np.fft.ifftn(symbol).real
    raise ValueError(f"unknown kernel kind {spec.kind!r}")


def apply(kernel: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Circular convolution sum_y kernel(y) f(x - y)."""
    out = np.fft.ifftn(np.fft.fftn(kernel) * np.fft.fftn(f))
    if np.isrealobj(kernel) and np.isrealobj(f):
        return out.real
    return out


def maximal_function(kernels: Sequence[np.ndarray], f: np.ndarray) -> np.ndarray:
    fhat = np.fft.fftn(f)
    best = np.zeros(f.shape)
    for ker in kernels:
        best = np.maximum(best, np.abs(np.fft.ifftn(np.fft.fftn(ker) * fhat)))
    return best


# ------------------------------------------------------------------ families

def family_specs(family: str, d: int, M: int, nmax: int = 4, K: int = 1,
                 t_grid: Sequence[float] = (0.5, 1, 2, 4, 8)) -> Tuple[List[KernelSpec], List[str]]:
    """Kernel specs for a named family, plus notes on anything skipped.

    spheres    n-shells for 1 <= n <= nmax (empty shells skipped)
    dbar       nbar in N_0^K with n_j <= max(1, d // (2K)) and sum <= d
    semigroup  P_{k,t,0} for k = 1..K and t in t_grid
    """
    notes = []
    if family == "spheres":
        specs = []
        for n in range(1, nmax + 1):
            if len(shell_points(d, n)) == 0:
                notes.append(f"skipped empty shell n={n}")
                continue
            if M <= 2 * math.isqrt(n):
                notes.append(f"skipped shell n={n}: needs M > {2 * math.isqrt(n)}")
                continue
            specs.append(KernelSpec.sphere(n, d, M))
        return specs, notes
    if family == "dbar":
        cap = max(1, d // (2 * K))
        specs = []
        for nbar in itertools.product(range(cap + 1), repeat=K):
            if sum(nbar) > d:
                continue
            if any(nbar) and M <= 2 * max(j + 1 for j, v in enumerate(nbar) if v):
                notes.append(f"skipped nbar={nbar}: aliasing")
                continue
            specs.append(KernelSpec.dbar(nbar, d, M))
        return specs, notes
    if family == "semigroup":
        return [KernelSpec.semigroup(k, t, 0, d, M) for k in range(1, K + 1) for t in t_grid], notes
    raise ValueError(f"unknown family {family!r}")


@dataclass
class NormRatioReport:
    family: str
    d: int
    M: int
    trials: int
    max_ratio: float
    mean_ratio: float
    seed: int
    notes: List[str] = field(default_factory=list)
    caveat: str = CAVEAT

    def to_dict(self):
        out = {
            "family": self.family, "d": self.d, "M": self.M, "trials": self.trials,
            "max_ratio": self.max_ratio, "mean_ratio": self.mean_ratio, "seed": self.seed,
            "caveat": self.caveat,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def empirical_norm_ratio(family: str, d: int, M: int, trials: int, seed: int,
                         nmax: int = 4, K: int = 1) -> NormRatioReport:
    """Largest and mean ||M f||_2 / ||f||_2 over random test functions.

    Half of the trials use Gaussian noise, half use nonnegative bumps
    (indicators of small random sets), which tend to give larger ratios.
    """
    specs, notes = family_specs(family, d, M, nmax=nmax, K=K)
    if not specs:
        raise ValueError(f"family {family!r} is empty at d={d}, M={M}")
    kernels = [make_kernel(s) for s in specs]
    rng = np.random.default_rng(seed)
    ratios = []
    for i in range(trials):
        if i % 2 == 0:
            f = rng.standard_normal((M,) * d)
        else:
            f = (rng.random((M,) * d) < 2.0 / M ** d).astype(float)
            f[(0,) * d] = 1.0
        mf = maximal_function(kernels, f)
        ratios.append(float(np.sqrt(np.sum(mf ** 2)) / np.sqrt(np.sum(np.abs(f) ** 2))))
    return NormRatioReport(family, d, M, trials, max(ratios), float(np.mean(ratios)), seed, notes)


def norm_ratio_trend(family: str, dims: Sequence[int], M: int, trials: int, seed: int,
                     nmax: int = 4, K: int = 1) -> List[NormRatioReport]:
    return [empirical_norm_ratio(family, d, M, trials, seed, nmax=nmax, K=K) for d in dims]


# --------------------------------------------------- semigroup verification

@dataclass
class SemigroupReport:
    k: int
    d: int
    M: int
    min_kernel_value: float
    positivity_ok: bool
    max_domination_excess: float
    domination_ok: bool
    max_symbol_law_error: float
    max_operator_law_error: float
    semigroup_ok: bool

    @property
    def ok(self):
        return self.positivity_ok and self.domination_ok and self.semigroup_ok


def verify_semigroup_properties(k: int, t_grid: Sequence[float], d: int, M: int,
                                trials: int = 4, seed: int = 0) -> SemigroupReport:
    """Positivity of P_{k,t,0}, |P_{k,t,1} f| <= P_{k,t,0}|f|, and
    P_s P_t = P_{s+t}, on the discrete torus."""
    _check_grid(d, M)
    rng = np.random.default_rng(seed)
    kmin = math.inf
    excess = -math.inf
    for t in t_grid:
        k0 = make_kernel(KernelSpec.semigroup(k, t, 0, d, M))
        k1 = make_kernel(KernelSpec.semigroup(k, t, 1, d, M))
        kmin = min(kmin, float(k0.min()))
        for _ in range(trials):
            f = rng.standard_normal((M,) * d) + 1j * rng.standard_normal((M,) * d)
            lhs = np.abs(apply(k1, f))
            rhs = apply(k0, np.abs(f)).real
            excess = max(excess, float((lhs - rhs).max()))
    xi = frequency_grid(d, M)
    sym_err = op_err = 0.0
    for s, t in itertools.product(t_grid, repeat=2):
        ps = np.exp(-s / d * np.sum(np.sin(np.pi * k * xi) ** 2, axis=-1))
        pt = np.exp(-t / d * np.sum(np.sin(np.pi * k * xi) ** 2, axis=-1))
        pst = np.exp(-(s + t) / d * np.sum(np.sin(np.pi * k * xi) ** 2, axis=-1))
        sym_err = max(sym_err, float(np.max(np.abs(ps * pt - pst) / pst)))
        f = rng.standard_normal((M,) * d)
        ks = make_kernel(KernelSpec.semigroup(k, s, 0, d, M))
        kt = make_kernel(KernelSpec.semigroup(k, t, 0, d, M))
        kst = make_kernel(KernelSpec.semigroup(k, s + t, 0, d, M))
        op_err = max(op_err, float(np.max(np.abs(apply(ks, apply(kt, f)) - apply(kst, f)))))
    return SemigroupReport(
        k, d, M, kmin, kmin >= -1e-12, excess, excess <= 1e-10,
        sym_err, op_err, sym_err <= 1e-14 and op_err <= 1e-10,
    )
