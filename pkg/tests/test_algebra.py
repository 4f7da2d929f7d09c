"""Exact-arithmetic substrate: polynomials, rational functions, series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massform.algebra import (
    PolyQ,
    RationalFunctionQ,
    TruncatedSeriesQ,
    poly_gcd,
    ratfun,
    ratfun_eval,
    ratfun_from_poly,
    rational_from_str,
    rational_to_str,
    series,
    series_from_ratfun,
    series_mul,
    series_one,
    series_pow,
)
from massform.errors import NotExpandableError, OrderMismatchError, PoleError


# -- rationals ----------------------------------------------------------

def test_rational_str_roundtrip():
    assert rational_to_str(Fraction(1, 3)) == "1/3"
    assert rational_to_str(Fraction(-44, 3)) == "-44/3"
    assert rational_to_str(Fraction(7)) == "7"
    assert rational_to_str(5) == "5"
    for text in ["1/3", "-44/3", "7", "0"]:
        assert rational_to_str(rational_from_str(text)) == text


# -- polynomials --------------------------------------------------------

def test_poly_normalization_drops_trailing_zeros():
    assert PolyQ((1, 2, 0, 0)).coeffs == (1, 2)
    assert PolyQ((0, 0)).is_zero()
    assert PolyQ.zero().degree == -1


def test_poly_arithmetic_basics():
    p = PolyQ((1, 1))       # 1 + u
    q = PolyQ((-1, 1))      # -1 + u
    assert (p * q).coeffs == (-1, 0, 1)
    assert (p + q).coeffs == (0, 2)
    assert (p - p).is_zero()
    assert p.pow(3).coeffs == (1, 3, 3, 1)


def test_poly_one_minus_builder():
    assert PolyQ.one_minus(4, 1).coeffs == (1, -4)
    assert PolyQ.one_minus(8, 2).coeffs == (1, 0, -8)
    assert PolyQ.one_minus(1, 0).is_zero()


def test_poly_scale_argument():
    p = PolyQ((1, 1, 2))    # numerator of a genus-1 count generator
    assert p.scale_argument(2).coeffs == (1, 2, 8)


def test_poly_divmod_exact():
    num = PolyQ((-1, 0, 1))             # u^2 - 1
    den = PolyQ((-1, 1))                # u - 1
    q, r = num.divmod(den)
    assert q.coeffs == (1, 1)
    assert r.is_zero()
    q2, r2 = PolyQ((1, 0, 1)).divmod(PolyQ((1, 1)))
    assert q2 * PolyQ((1, 1)) + r2 == PolyQ((1, 0, 1))


def test_poly_gcd_frozen_examples():
    # gcd(u^2 - 1, u - 1) = u - 1, returned monic
    g = poly_gcd(PolyQ((-1, 0, 1)), PolyQ((-1, 1)))
    assert g.coeffs == (-1, 1)
    # coprime inputs give 1
    assert poly_gcd(PolyQ((1, 1)), PolyQ((1, 0, 1))).coeffs == (1,)
    # gcd(0, 0) = 0 by convention
    assert poly_gcd(PolyQ.zero(), PolyQ.zero()).is_zero()
    assert poly_gcd(PolyQ.zero(), PolyQ((2, 2))).coeffs == (1, 1)


def test_poly_gcd_with_fractional_coefficients():
    a = PolyQ((Fraction(1, 2), Fraction(1, 2)))      # (1/2)(1 + u)
    b = PolyQ((Fraction(1, 3), Fraction(1, 3)))      # (1/3)(1 + u)
    assert poly_gcd(a, b).coeffs == (1, 1)


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)
poly_coeff_lists = st.lists(small_rationals, min_size=0, max_size=5)


@settings(max_examples=60, deadline=None)
@given(poly_coeff_lists, poly_coeff_lists, poly_coeff_lists)
def test_poly_gcd_divides_and_scales(a_cs, b_cs, c_cs):
    a, b, c = PolyQ(a_cs), PolyQ(b_cs), PolyQ(c_cs)
    g = poly_gcd(a, b)
    if not g.is_zero():
        assert (a % g).is_zero()
        assert (b % g).is_zero()
    if not (a.is_zero() and b.is_zero()) and not c.is_zero():
        lifted = poly_gcd(a * c, b * c)
        assert lifted == (g * c).monic()


# -- rational functions --------------------------------------------------

def test_ratfun_cancels_and_normalizes():
    f = ratfun(PolyQ((-1, 0, 1)), PolyQ((-1, 1)))    # (u^2-1)/(u-1)
    assert f.num.coeffs == (1, 1)
    assert f.den.coeffs == (1,)
    g = ratfun(PolyQ((2, 2)), PolyQ((4,)))           # denominator made monic
    assert g.den.coeffs == (1,)
    assert g.num.coeffs == (Fraction(1, 2), Fraction(1, 2))


def test_ratfun_eval_frozen_examples():
    f = ratfun(PolyQ((1, 0, -1)), PolyQ((1, -1)))    # (1-u^2)/(1-u)
    assert ratfun_eval(f, 1) == 2
    g = RationalFunctionQ(PolyQ.one(), PolyQ((1, -2)))   # 1/(1-2u)
    with pytest.raises(PoleError):
        ratfun_eval(g, Fraction(1, 2))
    assert ratfun_eval(g, 0) == 1


def test_ratfun_mul_cross_cancels():
    f = RationalFunctionQ(PolyQ((1, 1)), PolyQ((1, -2)))   # (1+u)/(1-2u)
    g = RationalFunctionQ(PolyQ((1, -2)), PolyQ((1, 1)))   # (1-2u)/(1+u)
    h = f * g
    assert h.num.coeffs == (1,)
    assert h.den.coeffs == (1,)


def test_ratfun_regularity_probe():
    f = ratfun(PolyQ((1, 1, 2)), PolyQ((1, -4)))
    assert f.is_regular_at(1)
    assert not f.is_regular_at(Fraction(1, 4))


@settings(max_examples=40, deadline=None)
@given(poly_coeff_lists, poly_coeff_lists)
def test_ratfun_field_inverse(a_cs, b_cs):
    a, b = PolyQ(a_cs), PolyQ(b_cs)
    if a.is_zero() or b.is_zero():
        return
    f = ratfun(a, b)
    if f.num.is_zero():
        return
    prod = f * f.inverse()
    assert prod.num.coeffs == (1,)
    assert prod.den.coeffs == (1,)


# -- truncated series ----------------------------------------------------

def test_series_from_ratfun_frozen_examples():
    geo = series_from_ratfun(ratfun(PolyQ.one(), PolyQ((1, -1))), 3)
    assert geo.coeffs == (1, 1, 1, 1)
    # 1/((1-u)(1-2u)) starts 1, 3, 7
    f = ratfun(PolyQ.one(), PolyQ((1, -1)) * PolyQ((1, -2)))
    assert series_from_ratfun(f, 2).coeffs == (1, 3, 7)
    # a polynomial expands to itself padded with zeros
    p = series_from_ratfun(ratfun_from_poly(PolyQ((1, -1))), 3)
    assert p.coeffs == (1, -1, 0, 0)


def test_series_from_ratfun_rejects_pole_at_origin():
    f = RationalFunctionQ(PolyQ.one(), PolyQ((0, 1)))
    with pytest.raises(NotExpandableError):
        series_from_ratfun(f, 4)


def test_series_mul_examples():
    a = series((1, 1, 1), 2)
    b = series((1, -1, 0), 2)
    assert series_mul(a, b).coeffs == (1, 0, 0)
    with pytest.raises(OrderMismatchError):
        series_mul(series((1,), 1), series((1,), 2))


def test_series_pow_matches_repeated_mul():
    a = series((1, 2, 3, 4), 3)
    cube = series_mul(series_mul(a, a), a)
    assert series_pow(a, 3).coeffs == cube.coeffs
    assert series_pow(a, 0).coeffs == series_one(3).coeffs


def _lagrange_coeffs(points):
    """Interpolating polynomial coefficients through (x, y) pairs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] += c * (-xj)
                nxt[k + 1] += c
            basis = nxt
        w = yi / denom
        for k, c in enumerate(basis):
            coeffs[k] += w * c
    return coeffs


@settings(max_examples=25, deadline=None)
@given(poly_coeff_lists, poly_coeff_lists)
def test_series_from_ratfun_interpolation_oracle(num_cs, den_cs):
    """Independent check: with S the degree-D truncation of num/den, the
    polynomial S*den - num has no terms of degree <= D.  Verified by
    sampling S*den - num at fresh points and interpolating, so no long
    division is reused from the implementation."""
    num, den = PolyQ(num_cs), PolyQ(den_cs)
    if den.coefficient(0) == 0:
        return
    f = ratfun(num, den)
    order = 4
    s = series_from_ratfun(f, order)
    s_poly = PolyQ(s.coeffs)
    t_degree_bound = order + max(f.den.degree, 0)
    xs, pts = 0, []
    while len(pts) < t_degree_bound + 1:
        xs += 1
        x = Fraction(xs, 7)          # avoid small-integer roots of den
        if f.den.eval(x) == 0:
            continue
        t_val = (s_poly.eval(x) - ratfun_eval(f, x)) * f.den.eval(x)
        pts.append((x, t_val))
    interp = _lagrange_coeffs(pts)
    assert all(c == 0 for c in interp[: order + 1])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(small_rationals, min_size=4, max_size=4),
    st.lists(small_rationals, min_size=4, max_size=4),
    st.lists(small_rationals, min_size=4, max_size=4),
)
def test_series_mul_commutes_and_associates(a_cs, b_cs, c_cs):
    a, b, c = series(a_cs, 3), series(b_cs, 3), series(c_cs, 3)
    assert series_mul(a, b).coeffs == series_mul(b, a).coeffs
    lhs = series_mul(series_mul(a, b), c)
    rhs = series_mul(a, series_mul(b, c))
    assert lhs.coeffs == rhs.coeffs


def test_series_validates_shape():
    with pytest.raises(ValueError):
        TruncatedSeriesQ(2, (Fraction(1),))
