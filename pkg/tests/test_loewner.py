import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, small_rats
from monogap import linalg
from monogap.loewner import (
    build_loewner,
    certify_Pn,
    eval_loewner,
    falsify_Pn_near_zero,
    is_psd_exact,
    leading_minor_polys,
    principal_minor_polys,
    quintic_family,
    quintic_family_detM3,
    verify_pn_certificate,
)
from monogap.ratpoly import RatPoly, poly_eval, standard_gap_poly
from monogap.realroots import Interval


class TestBuild:
    def test_g2(self, P):
        M = build_loewner(P("0,1,0,1/3"), 2)
        assert M.rows() == [[P("1,0,1"), P("0,1")], [P("0,1"), P("1/3")]]

    def test_cubic(self, P):
        M = build_loewner(P("0,1,-1,1"), 2)
        assert M.rows() == [[P("1,-2,3"), P("-1,3")], [P("-1,3"), P("1")]]

    def test_constant_gives_zero_matrix(self):
        M = build_loewner(RatPoly([4]), 3)
        assert all(p.is_zero() for row in M.rows() for p in row)

    def test_rejects_order_zero(self, P):
        with pytest.raises(ValueError):
            build_loewner(P("0,1"), 0)

    @given(polys(9), st.integers(1, 6))
    def test_hankel_structure(self, f, n):
        M = build_loewner(f, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert M.entry(i, j) == M.entry(j, i)
                if i > 1 and j < n:
                    assert M.entry(i, j) == M.entry(i - 1, j + 1)


class TestMinors:
    def test_g2(self, P):
        assert leading_minor_polys(build_loewner(standard_gap_poly(2), 2)) == [P("1,0,1"), P("1/3,0,-2/3")]

    def test_cubic(self, P):
        assert leading_minor_polys(build_loewner(P("0,1,-1,1"), 2)) == [P("1,-2,3"), P("0,4,-6")]

    def test_g3_top_minor(self, P):
        top = leading_minor_polys(build_loewner(standard_gap_poly(3), 3))[2]
        assert top == P("4/135,0,-11/15,0,0,0,-7/5")

    @given(polys(8), st.integers(1, 4), small_rats())
    def test_symbolic_det_matches_pointwise(self, f, n, x):
        M = build_loewner(f, n)
        for (idx, D) in principal_minor_polys(M):
            sub = linalg.submatrix(eval_loewner(M, x), [i - 1 for i in idx])
            assert poly_eval(D, x) == linalg.det(sub)


class TestEval:
    def test_g2_at_zero(self):
        assert eval_loewner(build_loewner(standard_gap_poly(2), 2), 0) == [[1, 0], [0, F(1, 3)]]

    def test_cubic_at_zero(self, P):
        assert eval_loewner(build_loewner(P("0,1,-1,1"), 2), 0) == [[1, -1], [-1, 1]]

    @given(polys(6), small_rats())
    def test_corner_is_derivative(self, f, x):
        assert eval_loewner(build_loewner(f, 2), x)[0][0] == poly_eval(f.derivative(), x)


class TestPsd:
    def test_diagonal(self):
        assert is_psd_exact([[1, 0], [0, F(1, 3)]])

    def test_degree_gate_shape(self):
        b1, b2 = F(3, 7), F(-2)
        check = is_psd_exact([[b1, b2], [b2, 0]])
        assert not check
        assert check.witness == ((1, 2), -b2 ** 2)

    def test_singular_gram(self):
        assert is_psd_exact([[1, -1], [-1, 1]])

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            is_psd_exact([[1, 2], [3, 4]])

    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small_rats(5, 3), min_size=n, max_size=n), min_size=1, max_size=n + 1)))
    def test_gram_matrices_are_psd(self, G):
        A = linalg.matmul(linalg.transpose(linalg.rat_matrix(G)), linalg.rat_matrix(G))
        assert is_psd_exact(A)

    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small_rats(5, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_psd_agrees_with_all_principal_minors(self, B):
        A = [[B[i][j] + B[j][i] for j in range(len(B))] for i in range(len(B))]
        by_minors = all(d >= 0 for _, d in linalg.principal_minors(A))
        check = is_psd_exact(A)
        assert bool(check) == by_minors
        if not check:
            idx, val = check.witness
            assert val < 0 and linalg.det(linalg.submatrix(A, [i - 1 for i in idx])) == val


class TestCertify:
    def test_g2(self):
        cert = certify_Pn(standard_gap_poly(2), 2)
        assert cert.alpha > F(1, 2)
        assert cert.alpha ** 2 < F(1, 2) < (cert.alpha + F(1, 2**39)) ** 2
        assert not cert.alpha_exact
        assert cert.verify()

    def test_cubic_exact_alpha(self, P):
        cert = certify_Pn(P("0,1,-1,1"), 2)
        assert cert.alpha == F(2, 3) and cert.alpha_exact

    def test_g3(self):
        cert = certify_Pn(standard_gap_poly(3), 3)
        assert cert.alpha > F(1, 5) and cert.verify()

    def test_hint_caps_alpha(self, P):
        cert = certify_Pn(P("0,1,-1,1"), 2, alpha_hint=F(1, 2))
        assert cert.alpha == F(1, 2)

    def test_not_psd_at_zero(self, P):
        assert certify_Pn(P("0,1,1"), 2) is None

    def test_affine(self, P):
        cert = certify_Pn(P("2,3"), 4)
        assert cert is not None and cert.alpha is None

    def test_order_one_is_plain_monotonicity(self, P):
        assert certify_Pn(P("0,1,-1"), 1).alpha == F(1, 2)

    def test_verifier_rejects_too_large_alpha(self, P):
        assert verify_pn_certificate(P("0,1,-1,1"), 2, F(2, 3))
        assert not verify_pn_certificate(P("0,1,-1,1"), 2, F(3, 4))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_certificate_excludes_falsification_inside(self, n):
        g = standard_gap_poly(n)
        cert = certify_Pn(g, n)
        fals = falsify_Pn_near_zero(g, n)
        assert fals is None or fals.t0 >= cert.alpha


class TestFalsify:
    def test_quintic_lambda_one(self):
        fals = falsify_Pn_near_zero(quintic_family(1, 1), 3)
        assert fals is not None and fals.value < 0
        assert fals.t0 > 0 and fals.negative_on is not None
        det3 = quintic_family_detM3(1, 1)
        assert det3.lowest_term() == (4, -105)

    def test_quartic_at_zero(self, P):
        fals = falsify_Pn_near_zero(P("0,0,0,0,1"), 3)
        assert fals.t0 == 0 and fals.value < 0 and len(fals.indices) == 2

    @given(small_rats().filter(lambda a: a > 0), small_rats(), st.integers(1, 5))
    def test_increasing_affine_never_falsified(self, a, b, n):
        assert falsify_Pn_near_zero(RatPoly([b, a]), n) is None

    @given(polys(8), st.integers(2, 4))
    def test_witness_is_negative(self, f, n):
        fals = falsify_Pn_near_zero(f, n)
        if fals is not None:
            assert poly_eval(fals.minor, fals.t0) == fals.value < 0
            mid = fals.t0 / 2 if fals.t0 else None
            if mid:
                assert poly_eval(fals.minor, mid) < 0


class TestQuintic:
    def test_equal_branch_display(self, P):
        assert quintic_family_detM3(1, 1) == P("0,0,0,0,-105,-210,-175")

    def test_trivial(self):
        assert quintic_family_detM3(0, 0).is_zero()

    def test_t2_coefficient(self):
        assert quintic_family_detM3(1, 2).coeff(2) == -15

    @given(small_rats(), small_rats())
    def test_t2_coefficient_bound(self, lam, c):
        c2 = quintic_family_detM3(lam, c).coeff(2)
        assert c2 == 30 * lam**4 * c - 15 * c**2 - 15 * lam**8
        assert c2 <= 0
        assert (c2 == 0) == (c == lam**4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_degree_deficient_never_psd_at_zero(n):
    rng = random.Random(n)
    for deg in range(2, 2 * n - 1):
        for _ in range(10):
            cs = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg)] + [F(rng.choice([-1, 1]) * rng.randint(1, 9))]
            f = RatPoly(cs)
            assert not is_psd_exact(eval_loewner(build_loewner(f, n), 0))
