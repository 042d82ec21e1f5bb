"""Acceptance suite: one test and one pass/fail line per criterion."""

import itertools
import math
import time
from collections import Counter
from fractions import Fraction as F

import numpy as np

from latticemax.exact_counting import (
    brute_force_shell, concentration_report, sphere_counts, theta_coeffs,
)
from latticemax.krawtchouk import bound_violations, kr
from latticemax.maximal_sim import (
    CAVEAT, KernelSpec, frequency_grid, make_kernel, norm_ratio_trend,
    verify_semigroup_properties,
)
from latticemax.multipliers import (
    beta_bruteforce, beta_eval, check_bounds, delta_beta, delta_beta_formula,
)
from latticemax.rm_inequality import dyadic_decompose, is_dyadic_piece, rm_check
from latticemax.saddle_point import b_coeffs, inversion_coeffs, log_estimate

CONCENTRATION_K = 2
CONCENTRATION_A = 4
CONCENTRATION_NS = (20, 40)


def test_criterion_01_exact_counts(criterion):
    t0 = time.perf_counter()
    mismatches = 0
    for d in range(0, 7):
        counts = sphere_counts(d, 25)
        mismatches += sum(counts[n] != brute_force_shell(d, n) for n in range(26))
    four = sphere_counts(4, 200)
    law = lambda n: 8 * sum(m for m in range(1, n + 1) if n % m == 0 and m % 4)
    mismatches += sum(four[n] != law(n) for n in range(1, 201))
    dt = time.perf_counter() - t0
    criterion(1, "shell counts vs enumeration and four-square law", mismatches == 0 and dt < 30,
              f"{mismatches} mismatches, {dt:.2f}s")


def test_criterion_02_ternary_identity(criterion):
    t0 = time.perf_counter()
    bad = 0
    for d in range(0, 31):
        c = theta_coeffs(d, d, K_cap=1).coeffs
        bad += sum(c[n] != 2 ** n * math.comb(d, n) for n in range(d + 1))
    dt = time.perf_counter() - t0
    criterion(2, "ternary identity d<=30", bad == 0 and dt < 5, f"{bad} mismatches, {dt:.2f}s")


def test_criterion_03_saddle_estimator(criterion):
    t0 = time.perf_counter()
    worst, where = 0.0, None
    for d in (200, 500, 1000, 2000):
        nmax = d // 20
        counts = theta_coeffs(d, nmax).coeffs
        for n in range(1, nmax + 1):
            diff = log_estimate(n, d) - math.log(counts[n])
            if abs(diff) > abs(worst):
                worst, where = diff, (d, n)
    dt = time.perf_counter() - t0
    ok = abs(worst) <= math.log(10) and dt < 180
    criterion(3, "saddle log-estimate within ln 10", ok,
              f"worst log-ratio {worst:+.4f} at (d,n)={where}, {dt:.1f}s")


def test_criterion_04_series_coefficients(criterion):
    t0 = time.perf_counter()
    a = inversion_coeffs(4)
    b = b_coeffs(3)
    ok = (a == [F(1, 2), F(1, 2), F(1, 2), F(1, 4)]
          and b == [F(1), F(-1, 2), F(-1, 6), F(1, 24)]
          and b[3] + F(1, 12) == F(1, 8))
    dt = time.perf_counter() - t0
    criterion(4, "inversion and exponent coefficients", ok and dt < 1,
              f"a={[str(x) for x in a]}, b={[str(x) for x in b]}, {dt:.3f}s")


def test_criterion_05_krawtchouk(criterion):
    t0 = time.perf_counter()
    bad = 0
    for n in range(0, 61):
        for k in range(n + 1):
            for x in range(n + 1):
                v = kr(k, n, x)
                bad += v != kr(x, n, k)
                bad += kr(k, n, n - x) != (-1) ** k * v
                if n >= 2 and k + 2 <= n:
                    rhs = 0 if x in (0, n) else F(-4 * x * (n - x), n * (n - 1)) * kr(k, n - 2, x - 1)
                    bad += kr(k + 2, n, x) - v != rhs
    viol = len(bound_violations(60))
    dt = time.perf_counter() - t0
    criterion(5, "Krawtchouk identities and uniform bound n<=60", bad == 0 and viol == 0 and dt < 60,
              f"{bad} identity failures, {viol} bound violations, {dt:.1f}s")


def test_criterion_06_multiplier_equivalence(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240601)
    err_dp = 0.0
    done = 0
    while done < 200:
        d = int(rng.integers(1, 9))
        K = int(rng.integers(1, 3))
        nbar = [int(v) for v in rng.integers(0, 5, size=K)]
        if sum(nbar) > min(4, d):
            continue
        xi = rng.random(d)
        err_dp = max(err_dp, abs(beta_eval(nbar, xi) - beta_bruteforce(nbar, xi)))
        done += 1
    err_formula = 0.0
    done = 0
    while done < 200:
        K = int(rng.integers(1, 3))
        U = [k for k in range(1, K + 1) if rng.random() < 0.7] or [K]
        d = int(rng.integers(2 * len(U), 9 if len(U) > 1 else 13))
        nbar = [int(v) for v in rng.integers(0, 4, size=K)]
        for k in U:
            nbar[k - 1] = max(nbar[k - 1], 2)
        if sum(nbar) > d:
            continue
        xi = rng.random(d)
        err_formula = max(err_formula, abs(delta_beta_formula(nbar, U, xi) - delta_beta(nbar, U, xi)))
        done += 1
    dt = time.perf_counter() - t0
    ok = err_dp <= 1e-10 and err_formula <= 1e-10 and dt < 60
    criterion(6, "multiplier DP vs enumeration; difference identity", ok,
              f"max errors {err_dp:.2e} and {err_formula:.2e}, {dt:.1f}s")


def test_criterion_07_bound_suites(criterion):
    t0 = time.perf_counter()
    explicit = [check_bounds("dyadic-sum", 10_000, 1),
                check_bounds("beta-decay", 500, 2),
                check_bounds("subset-average", 500, 3)]
    fitted = [check_bounds("semigroup-comparison", 500, 4),
              check_bounds("difference-decay", 500, 5)]
    dt = time.perf_counter() - t0
    viol = sum(r.violations for r in explicit)
    ok = viol == 0 and all(math.isfinite(r.fitted_constant) for r in fitted) and dt < 120
    detail = ", ".join(f"{r.suite} worst {r.worst_ratio:.3g}" for r in explicit)
    detail += "; " + ", ".join(f"{r.suite} fitted {r.fitted_constant:.3g}" for r in fitted)
    criterion(7, "inequality suites", ok, f"{viol} violations; {detail}; {dt:.1f}s")


def test_criterion_08_concentration(criterion):
    t0 = time.perf_counter()
    checked = 0
    for d in range(1, 7):
        for n in range(0, 19, 3):
            for K in (1, 2):
                for a in (0, 1, 4, n + 1):
                    checked += concentration_report(d, n, K, a).cross_checked
    worst = 0.0
    for n in CONCENTRATION_NS:
        for d in (500, 1000, 2000):
            f1 = concentration_report(d, n, CONCENTRATION_K, CONCENTRATION_A).fractions["small_mass"]
            f2 = concentration_report(2 * d, n, CONCENTRATION_K, CONCENTRATION_A).fractions["small_mass"]
            worst = max(worst, f2 / f1)
    dt = time.perf_counter() - t0
    ok = checked == 6 * 7 * 2 * 4 and worst <= 0.75 and dt < 120
    criterion(8, "concentration fractions", ok,
              f"{checked} enumeration cross-checks, worst f(2d)/f(d) = {worst:.3g} "
              f"(K={CONCENTRATION_K}, a={CONCENTRATION_A}, n in {CONCENTRATION_NS}), {dt:.1f}s")


def test_criterion_09_torus(criterion):
    t0 = time.perf_counter()
    reports = [verify_semigroup_properties(k, [0.25, 1.0, 4.0], d, M, trials=2, seed=0)
               for d in (1, 2, 3) for M in (8, 16) for k in (1, 2)]
    sg_ok = all(r.ok for r in reports)
    spec_err = 0.0
    for d, M, nbar in [(1, 8, (1,)), (2, 8, (1, 1)), (3, 8, (1, 1)), (3, 8, (0, 2)), (2, 16, (2,))]:
        F_ = np.fft.fftn(make_kernel(KernelSpec.dbar(nbar, d, M)))
        xi = frequency_grid(d, M)
        spec_err = max(spec_err, max(abs(F_[i] - beta_eval(nbar, xi[i])) for i in np.ndindex(*F_.shape)))
    trend = norm_ratio_trend("spheres", [1, 2, 3, 4], 8, 6, seed=0)
    dt = time.perf_counter() - t0
    ratios = ", ".join(f"d={r.d}:{r.max_ratio:.3f}" for r in trend)
    ok = sg_ok and spec_err <= 1e-10 and dt < 120
    criterion(9, "torus semigroup and spectral checks", ok,
              f"semigroup {'ok' if sg_ok else 'FAILED'}, spectral error {spec_err:.1e}, "
              f"sphere maximal ratios [{ratios}] ({CAVEAT}), {dt:.1f}s")


def test_criterion_10_rademacher_menshov(criterion):
    t0 = time.perf_counter()
    s = 10
    bad = 0
    for n in range(0, 2 ** s, 2):
        for k in range(n + 2, 2 ** s + 1, 2):
            P = dyadic_decompose(n, k, s)
            ok = (P[0][0] == n and P[-1][1] == k
                  and all(a[1] == b[0] for a, b in zip(P, P[1:]))
                  and all(is_dyadic_piece(lo, hi, s) for lo, hi in P)
                  and max(Counter(hi - lo for lo, hi in P).values()) <= 2)
            bad += not ok
    worst = []
    for depth in range(1, 11):
        rep = rm_check(1, (depth,), (2 ** depth,), trials=100, seed=depth)
        worst.append((depth, rep.fitted_constant))
    rm_ok = all(c <= math.sqrt(2) * depth + 1 for depth, c in worst)
    dt = time.perf_counter() - t0
    criterion(10, "dyadic decomposition and one-parameter inequality", bad == 0 and rm_ok and dt < 60,
              f"{bad} bad decompositions; fitted constants "
              + ", ".join(f"s={d_}:{c:.3f}" for d_, c in worst) + f"; {dt:.1f}s")
