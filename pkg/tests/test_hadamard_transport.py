import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, small_rats
from monogap import linalg
from monogap.hadamard_transport import (
    affine_transport_loewner,
    eig_bounds_check,
    hadamard,
    invertibility_transport,
    rank_inequality_check,
    scaling_matrix,
)
from monogap.loewner import is_psd_exact
from monogap.ratpoly import RatPoly, standard_gap_poly


def ones(n):
    return [[1] * n for _ in range(n)]


def gram(rng, n, rank=None):
    rank = n if rank is None else rank
    G = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(rank)]
    return linalg.matmul(linalg.transpose(G), G)


class TestHadamard:
    def test_examples(self):
        A = [[1, 2], [3, 4]]
        assert hadamard(A, ones(2)) == A
        assert hadamard(linalg.identity(3), linalg.identity(3)) == linalg.identity(3)
        assert hadamard(A, [[2, 0], [0, 2]]) == [[2, 0], [0, 8]]

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            hadamard([[1]], [[1, 2]])


class TestScaling:
    @pytest.mark.parametrize("alpha", [F(3), F(-2), F(1, 5)])
    def test_rank_one_and_psd_iff_positive(self, alpha):
        D = scaling_matrix(alpha, 4)
        assert D[0][0] == alpha and D[3][3] == alpha ** 7
        assert linalg.matrix_rank(D) == 1
        assert bool(is_psd_exact(D)) == (alpha > 0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            scaling_matrix(0, 2)


class TestRankInequality:
    def test_rank_one_pair(self):
        u, v = [1, 2, 3], [F(1, 2), -1, 4]
        A = [[a * b for b in u] for a in u]
        B = [[a * b for b in v] for a in v]
        assert linalg.matrix_rank(hadamard(A, B)) <= 1
        assert rank_inequality_check(A, B)

    def test_identity(self):
        assert rank_inequality_check(linalg.identity(4), linalg.identity(4))

    def test_ones_is_neutral(self):
        A = [[1, 2, 0], [0, 1, 5], [2, 0, 1]]
        assert linalg.matrix_rank(hadamard(A, ones(3))) == linalg.matrix_rank(A)

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))))
    def test_random_pairs(self, AB):
        assert rank_inequality_check(*AB)


class TestEigBounds:
    def test_identity_a(self):
        B = [[2, 1], [1, 2]]
        assert eig_bounds_check(linalg.identity(2), B)

    def test_worked_example(self):
        A = [[2, 1], [1, 2]]
        assert hadamard(A, A) == [[4, 1], [1, 4]]
        assert eig_bounds_check(A, A)

    def test_rank_one_pair(self):
        A = [[1, 2], [2, 4]]
        B = [[1, -1], [-1, 1]]
        assert eig_bounds_check(A, B)

    def test_non_psd_rejected(self):
        with pytest.raises(ValueError):
            eig_bounds_check([[1, 2], [2, 1]], linalg.identity(2))

    def test_random_psd_pairs(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 6)
            A, B = gram(rng, n, rng.randint(1, n)), gram(rng, n, rng.randint(1, n))
            assert eig_bounds_check(A, B)


class TestInvertibilityTransport:
    def test_identity(self):
        assert all(invertibility_transport(linalg.identity(3), F(-7, 2), k) for k in (1, 2, 3))

    def test_singular_corner(self):
        A = [[1, 1, 0], [1, 1, 0], [0, 0, 1]]
        AD = hadamard(A, scaling_matrix(3, 3))
        assert linalg.det(linalg.leading_block(AD, 2)) == 0
        assert invertibility_transport(A, 3, 2)

    def test_negative_alpha(self):
        rng = random.Random(1)
        A = gram(rng, 4, 2)
        assert all(invertibility_transport(A, -2, k) for k in range(1, 5))

    def test_k_range(self):
        with pytest.raises(ValueError):
            invertibility_transport(linalg.identity(2), 2, 3)


class TestAffineTransport:
    def test_identity_map(self):
        assert affine_transport_loewner(standard_gap_poly(3), 3, 1, 0, F(1, 7))

    def test_g2_doubling(self):
        assert affine_transport_loewner(standard_gap_poly(2), 2, 2, 0, 0)

    def test_cubic(self, P):
        assert affine_transport_loewner(P("0,1,-1,1"), 2, F(1, 2), F(1, 3), 0)

    def test_wrong_anchor_fails(self, P):
        # anchoring both sides at the same point breaks the identity once c != 0
        from monogap.hadamard_transport import hadamard as had
        from monogap.loewner import build_loewner, eval_loewner
        from monogap.ratpoly import compose_affine
        f, s, c = P("0,1,-1,1"), F(1, 2), F(1, 3)
        lhs = eval_loewner(build_loewner(compose_affine(f, s, c), 2), 0)
        rhs = had(eval_loewner(build_loewner(f, 2), 0), scaling_matrix(s, 2))
        assert lhs != rhs

    @given(polys(8), st.integers(1, 5), small_rats().filter(bool), small_rats(), small_rats())
    def test_random(self, f, n, s, c, t0):
        assert affine_transport_loewner(f, n, s, c, t0)
