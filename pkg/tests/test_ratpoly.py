from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, small_rats
from monogap.ratpoly import (
    RatPoly,
    as_rat,
    compose_affine,
    divide_out_root,
    poly_derivative,
    poly_eval,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
    standard_gap_poly,
    taylor_coeff,
    taylor_shift,
)

t = sympy.symbols("t")


def to_sympy(p: RatPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**j for j, c in enumerate(p.coeffs))


def test_canonical_form_trims_leading_zeros():
    assert RatPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert RatPoly([0, 0]).is_zero()
    assert RatPoly().degree == -1


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_rat(0.5)
    with pytest.raises(TypeError):
        RatPoly([0.5])


def test_parse_and_text_roundtrip(P):
    g2 = P("0,1,0,1/3")
    assert g2 == RatPoly([0, 1, 0, F(1, 3)])
    assert g2.to_text() == "0,1,0,1/3"
    assert str(g2) == "t + 1/3*t^3"
    with pytest.raises(ValueError):
        P("1,x")


class TestEval:
    def test_zero_poly(self):
        assert poly_eval(RatPoly(), F(7, 3)) == 0

    def test_g2_at_half(self, P):
        assert poly_eval(P("0,1,0,1/3"), F(1, 2)) == F(13, 24)

    def test_det_root(self, P):
        assert poly_eval(P("0,4,-6"), F(2, 3)) == 0


class TestDerivative:
    def test_g2(self, P):
        assert poly_derivative(P("0,1,0,1/3"), 1) == P("1,0,1")

    def test_second_derivative_of_cubic(self, P):
        assert poly_derivative(P("0,1,-1,1"), 2) == P("-2,6")

    def test_constant(self):
        assert poly_derivative(RatPoly([5]), 1).is_zero()

    def test_order_zero_is_identity_and_negative_rejected(self, P):
        assert poly_derivative(P("1,1"), 0) == P("1,1")
        with pytest.raises(ValueError):
            poly_derivative(P("1,1"), -1)


class TestTaylor:
    def test_cubic_at_zero(self, P):
        f = P("0,1,-1,1")
        assert [taylor_coeff(f, j, 0) for j in range(4)] == [0, 1, -1, 1]

    def test_beyond_degree(self, P):
        assert taylor_coeff(P("1,2,3"), 5, F(3, 7)) == 0

    def test_g3_top(self):
        assert taylor_coeff(standard_gap_poly(3), 5, 0) == F(1, 5)

    @given(polys(), small_rats())
    def test_matches_sympy(self, f, t0):
        expr = to_sympy(f)
        for j in range(f.degree + 2):
            want = sympy.diff(expr, t, j).subs(t, sympy.Rational(t0.numerator, t0.denominator)) / sympy.factorial(j)
            assert taylor_coeff(f, j, t0) == F(str(want))

    @given(polys(), small_rats())
    def test_shift_evaluates_consistently(self, f, t0):
        g = taylor_shift(f, t0)
        assert poly_eval(g, 1) == poly_eval(f, t0 + 1)


class TestComposeAffine:
    def test_identity(self, P):
        f = P("1,2,3,4")
        assert compose_affine(f, 1, 0) == f

    def test_square(self, P):
        assert compose_affine(P("0,0,1"), 2, 1) == P("1,4,4")

    def test_odd_symmetry(self, P):
        g2 = P("0,1,0,1/3")
        assert compose_affine(g2, -1, 0) == -g2

    def test_zero_slope_is_constant(self, P):
        assert compose_affine(P("1,1,1"), 0, 2) == RatPoly([7])

    @given(polys(), small_rats().filter(bool), small_rats())
    def test_inverse_roundtrip(self, f, s, c):
        assert compose_affine(compose_affine(f, s, c), 1 / s, -c / s) == f


class TestGapPoly:
    def test_small_cases(self, P):
        assert standard_gap_poly(1) == P("0,1")
        assert standard_gap_poly(2) == P("0,1,0,1/3")
        assert standard_gap_poly(5) == P("0,1,0,1/3,0,1/5,0,1/7,0,1/9")

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            standard_gap_poly(0)


@given(polys(4), polys(4), polys(4))
def test_distributive(f, g, h):
    assert (f + g) * h == f * h + g * h


@given(polys(5), polys(5), small_rats())
def test_derivative_linear_and_leibniz(f, g, c):
    assert (f * c + g).derivative() == f.derivative() * c + g.derivative()
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(polys())
def test_taylor_at_zero_reads_coefficients(f):
    assert all(taylor_coeff(f, j, 0) == f.coeff(j) for j in range(f.degree + 1))


@given(polys(5), polys(3).filter(lambda d: not d.is_zero()))
def test_divmod_against_sympy(f, d):
    q, r = divmod(f, d)
    assert q * d + r == f
    assert r.degree < d.degree
    sq, sr = sympy.div(to_sympy(f), to_sympy(d), t)
    assert sympy.expand(to_sympy(q) - sq) == 0 and sympy.expand(to_sympy(r) - sr) == 0


@given(polys(4), polys(4))
def test_gcd_against_sympy(f, g):
    if f.is_zero() and g.is_zero():
        return
    ours = poly_gcd(f, g)
    theirs = sympy.Poly(sympy.gcd(to_sympy(f), to_sympy(g)), t).monic()
    assert ours == RatPoly.parse(",".join(str(c) for c in reversed(theirs.all_coeffs())))


def test_squarefree_decomposition_pins_multiplicities():
    f = RatPoly.from_roots([1, 1, 1, F(-1, 2), 3, 3])
    dec = dict((m, p) for p, m in squarefree_decomposition(f))
    assert dec[3] == RatPoly.from_roots([1])
    assert dec[2] == RatPoly.from_roots([3])
    assert dec[1] == RatPoly.from_roots([F(-1, 2)])
    assert squarefree_part(f) == RatPoly.from_roots([1, F(-1, 2), 3])


@given(st.lists(small_rats(5, 4), min_size=1, max_size=5), small_rats(5, 4))
def test_divide_out_root(roots, r):
    f = RatPoly.from_roots(roots)
    cof, m = divide_out_root(f, r)
    assert m == roots.count(r)
    assert cof * RatPoly([-r, 1]) ** m == f
    assert poly_eval(cof, r) != 0
