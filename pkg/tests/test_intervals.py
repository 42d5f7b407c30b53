"""Certified enclosures checked against mpmath at higher working precision."""
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kwise.intervals import (
    Interval,
    exp_interval,
    gamma_interval,
    int_nth_root,
    log_interval,
    loggamma_interval,
    nth_root,
    pi_interval,
    rational_power,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)


def encloses(iv: Interval, mp_value, digits: int = 30) -> bool:
    lo, hi = iv.decimal_bounds(digits)
    v = Decimal(mpmath.nstr(mp_value, digits + 10, strip_zeros=False))
    return Decimal(lo) <= v <= Decimal(hi)


def test_interval_basics():
    iv = Interval(Fraction(1, 3), Fraction(1, 2))
    assert iv.contains(Fraction(2, 5))
    assert not iv.contains(Fraction(3, 5))
    assert iv.width == Fraction(1, 6)
    assert iv.midpoint == Fraction(5, 12)
    with pytest.raises(ValueError):
        Interval(Fraction(1), Fraction(0))


def test_decimal_bounds_round_outward():
    iv = Interval(Fraction(1, 3), Fraction(2, 3))
    lo, hi = iv.decimal_bounds(5)
    assert Decimal(lo) == Decimal("0.33333")
    assert Decimal(hi) == Decimal("0.66667")


def test_division_by_zero_straddling_interval():
    with pytest.raises(ZeroDivisionError):
        Interval.point(1) / Interval(Fraction(-1), Fraction(1))


def test_pow_int_even_power_straddling_zero():
    iv = Interval(Fraction(-2), Fraction(3))
    sq = iv.pow_int(2)
    assert sq.lo == 0 and sq.hi == 9
    assert iv.pow_int(0).contains(1)
    assert iv.pow_int(3).lo == -8


@given(rationals, rationals, rationals, rationals)
def test_arithmetic_containment(a, b, x, y):
    """x in [A], y in [B] implies x op y in [A] op [B]."""
    ia = Interval(min(a, x), max(a, x)).round_out(20)
    ib = Interval(min(b, y), max(b, y)).round_out(20)
    assert (ia + ib).contains(x + y)
    assert (ia - ib).contains(x - y)
    assert (ia * ib).contains(x * y)
    if not ib.contains(0):
        assert (ia / ib).contains(x / y)


@given(st.integers(0, 10**12), st.integers(1, 7))
def test_int_nth_root_floor(n, k):
    r = int_nth_root(n, k)
    assert r**k <= n < (r + 1) ** k


def test_nth_root_exact_collapse():
    assert nth_root(Fraction(27, 8), 3) == Interval.point(Fraction(3, 2))
    assert nth_root(Fraction(0), 5) == Interval.point(0)


@given(
    st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(1000), max_denominator=1000),
    st.integers(2, 6),
)
def test_nth_root_encloses_and_is_tight(x, k):
    iv = nth_root(x, k, prec=80)
    assert iv.width <= Fraction(1, 2**80)
    assert iv.lo**k <= x <= iv.hi**k


def test_pi_against_mpmath():
    with mpmath.workdps(60):
        assert encloses(pi_interval(160), mpmath.pi)
    assert pi_interval(160).width <= Fraction(1, 2**150)


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(2), Fraction(10), Fraction(7, 5)])
def test_log_against_mpmath(x):
    with mpmath.workdps(60):
        assert encloses(log_interval(x, 160), mpmath.log(mpmath.mpf(x.numerator) / x.denominator))


def test_log_of_one_is_zero():
    assert log_interval(Fraction(1), 100).contains(0)


@pytest.mark.parametrize("x", [Fraction(-3), Fraction(0), Fraction(1), Fraction(7, 3)])
def test_exp_against_mpmath(x):
    with mpmath.workdps(60):
        assert encloses(exp_interval(x, 160), mpmath.exp(mpmath.mpf(x.numerator) / x.denominator))


@pytest.mark.parametrize(
    "x", [Fraction(1, 2), Fraction(3, 2), Fraction(5), Fraction(7, 2), Fraction(25, 4)]
)
def test_gamma_against_mpmath(x):
    with mpmath.workdps(60):
        xm = mpmath.mpf(x.numerator) / x.denominator
        assert encloses(gamma_interval(x, 160), mpmath.gamma(xm))
        assert encloses(loggamma_interval(x, 160), mpmath.loggamma(xm))


def test_gamma_exact_points():
    assert gamma_interval(Fraction(5), 100).contains(24)
    # Gamma(1/2)^2 = pi
    g = gamma_interval(Fraction(1, 2), 120)
    assert g.pow_int(2).contains(pi_interval(120))


@given(
    st.fractions(min_value=Fraction(1, 50), max_value=Fraction(50), max_denominator=50),
    st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=12),
)
def test_rational_power_against_mpmath(x, e):
    iv = rational_power(x, e, prec=96)
    with mpmath.workdps(50):
        xm = mpmath.mpf(x.numerator) / x.denominator
        em = mpmath.mpf(e.numerator) / e.denominator
        assert encloses(iv, xm**em, digits=24)


def test_rational_power_integer_exponent_is_exact():
    assert rational_power(Fraction(3, 2), Fraction(4), 64).contains(Fraction(81, 16))
    assert rational_power(Fraction(5), Fraction(-2), 64).contains(Fraction(1, 25))
