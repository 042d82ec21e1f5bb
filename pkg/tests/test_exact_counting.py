import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latticemax.errors import GuardError
from latticemax.exact_counting import (
    ball_count, brute_force_shell, concentration_report, d_count, enumerate_dbar,
    few_ones_count, poly_mul, shell_points, small_mass_count, sphere_count,
    sphere_counts, theta_coeffs,
)


def four_square(n):
    return 8 * sum(m for m in range(1, n + 1) if n % m == 0 and m % 4)


def test_theta_coeffs_examples():
    assert list(theta_coeffs(1, 10).coeffs) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0]
    assert theta_coeffs(4, 2)[2] == 24
    assert theta_coeffs(3, 2, K_cap=1)[2] == 12


def test_sphere_and_ball_examples():
    assert sphere_count(7, 0) == 1
    assert sphere_count(1, 4) == 2
    assert sphere_count(2, 25) == 12
    assert ball_count(2, 2) == 9
    assert ball_count(4, 1) == 9


def test_d_count_examples():
    assert d_count((1,), 3) == 6
    assert d_count((1, 1), 4) == 48
    assert len(enumerate_dbar((1, 1), 4)) == 48
    assert len({tuple(p) for p in enumerate_dbar((2, 1), 5)}) == d_count((2, 1), 5)


def test_dbar_points_have_right_profile():
    pts = enumerate_dbar((2, 1), 5)
    for p in pts:
        a = np.abs(p)
        assert (a == 1).sum() == 2 and (a == 2).sum() == 1 and (a == 0).sum() == 2


def test_brute_force_guard():
    with pytest.raises(GuardError, match="brute-force-shell"):
        brute_force_shell(9, 2)
    with pytest.raises(GuardError):
        brute_force_shell(3, 31)


def test_four_square_law():
    counts = sphere_counts(4, 200)
    assert all(counts[n] == four_square(n) for n in range(1, 201))


def test_kronecker_product_matches_schoolbook():
    rng = np.random.default_rng(0)
    a = [int(x) ** 3 for x in rng.integers(0, 10 ** 10, size=60)]
    b = [int(x) ** 3 for x in rng.integers(0, 10 ** 10, size=60)]
    N = 80
    ref = [0] * (N + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= N:
                ref[i + j] += x * y
    assert poly_mul(a, b, N) == ref


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(0, 20))
def test_matches_enumeration(d, n):
    assert sphere_count(d, n) == brute_force_shell(d, n)
    pts = shell_points(d, n)
    assert len(pts) == 0 or (pts ** 2).sum(axis=1).tolist() == [n] * len(pts)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.data())
def test_ternary_identity(d, data):
    n = data.draw(st.integers(0, d))
    assert theta_coeffs(d, n, K_cap=1)[n] == 2 ** n * math.comb(d, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(0, 30))
def test_monotone_in_dimension(d, n):
    assert sphere_count(d, n) <= sphere_count(d + 1, n)


def test_concentration_examples():
    r = concentration_report(6, 9, 2, 4)
    assert r.cross_checked
    # only points with a coordinate +-3 put mass >= 4 outside {|x_i| <= 2}
    assert r.small_mass_violations == 12
    assert r.shell_total == 876
    assert concentration_report(5, 7, 2, 0).fractions["small_mass"] == 1.0
    assert concentration_report(5, 4, 2, 5).fractions["small_mass"] == 0.0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(0, 16), st.integers(0, 3), st.integers(0, 10))
def test_concentration_matches_enumeration(d, n, K, a):
    # the report cross-checks itself against enumeration for d <= 6
    r = concentration_report(d, n, K, a)
    assert r.cross_checked
    assert 0 <= r.small_mass_violations <= r.shell_total
    assert 0 <= r.few_ones_violations <= r.shell_total


def test_concentration_counts_at_large_d():
    # a = 1 and K = 2: violations are exactly points with some |x_i| >= 3
    d, n = 300, 12
    total = sphere_count(d, n)
    no_big = theta_coeffs(d, n, K_cap=2)[n]
    assert small_mass_count(d, n, 2, 1) == total - no_big
    assert few_ones_count(d, n) <= total
