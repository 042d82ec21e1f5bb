from fractions import Fraction

from hypothesis import given, settings, strategies as st

from latticemax.series import Series

coeffs = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=20), min_size=1, max_size=8)


@settings(max_examples=50)
@given(coeffs)
def test_inverse_roundtrip(c):
    if c[0] == 0:
        c[0] = Fraction(1)
    s = Series(c, 8)
    one = s * s.inverse()
    assert one.c == [1] + [0] * 7


@settings(max_examples=30)
@given(coeffs)
def test_log_of_power(c):
    c = [Fraction(1)] + c
    s = Series(c, 7)
    assert (s ** 3).log().c == (s.log() * 3).c


def test_log_geometric():
    s = Series([1, -1], 6)  # 1 - z
    assert s.log().c == [0] + [Fraction(-1, k) for k in range(1, 6)]


def test_compose_matches_direct():
    z = Series.monomial(1, 6)
    outer = Series([1, 2, 3], 6)
    inner = z + z * z
    assert outer.compose(inner).c == (1 + 2 * inner + 3 * inner * inner).c
