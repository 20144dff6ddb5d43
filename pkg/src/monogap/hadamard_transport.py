"""Hadamard-product rank and eigenvalue facts, and affine transport of Loewner matrices.

Under ``g(t) = s t + c`` the chain rule gives
``(f o g)^(k)(t) = s^k f^(k)(g(t))``, hence

    M_n(f o g; t0) = M_n(f; g(t0)) o (s^(i+j-1))_{i,j}

where ``o`` is the entrywise product.  The scaling matrix ``(s^(i+j-1))`` has
rank one, so the two Loewner matrices share the invertibility of every
leading block.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .loewner import build_loewner, eval_loewner, is_psd_exact
from .ratpoly import RatPoly, as_rat, compose_affine
from .realroots import Interval, isolate_real_roots

EIG_TOL = 1e-9


def hadamard(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[Fraction]]:
    A, B = linalg.rat_matrix(A), linalg.rat_matrix(B)
    if len(A) != len(B) or any(len(ra) != len(rb) for ra, rb in zip(A, B)):
        raise ValueError("Hadamard product needs equal shapes")
    return [[a * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scaling_matrix(alpha, n: int) -> list[list[Fraction]]:
    """``(alpha^(i+j-1))_{i,j=1..n}``."""
    alpha = as_rat(alpha)
    if alpha == 0:
        raise ValueError("scaling factor must be nonzero")
    return [[alpha ** (i + j + 1) for j in range(n)] for i in range(n)]


def rank_inequality_check(A, B) -> bool:
    """``rank(A o B) <= rank(A) * rank(B)``."""
    r = linalg.matrix_rank
    return r(hadamard(A, B)) <= r(linalg.rat_matrix(A)) * r(linalg.rat_matrix(B))


def _float(A) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in A], dtype=float)


def eig_bounds_check(A, B, tol: float = EIG_TOL) -> bool:
    """Eigenvalues of ``A o B`` lie in ``[min a_ii * lmin(B), max a_ii * lmax(B)]``.

    Both matrices must be PSD. Eigenvalues are computed in floating point
    and compared with slack ``tol``; for order <= 4 the bounds are also
    checked against exact root enclosures of the characteristic polynomials.
    """
    A, B = linalg.rat_matrix(A), linalg.rat_matrix(B)
    for name, M in (("A", A), ("B", B)):
        if not is_psd_exact(M):
            raise ValueError(f"{name} is not positive semidefinite")
    diag = [A[i][i] for i in range(len(A))]
    dmin, dmax = min(diag), max(diag)
    C = hadamard(A, B)
    eb = np.linalg.eigvalsh(_float(B))
    ec = np.linalg.eigvalsh(_float(C))
    scale = max(1.0, float(np.max(np.abs(ec))), float(np.max(np.abs(eb))) * float(dmax))
    lower, upper = float(dmin) * eb[0], float(dmax) * eb[-1]
    ok = bool(np.all(ec >= lower - tol * scale) and np.all(ec <= upper + tol * scale))
    if len(A) <= 4:
        ok = ok and _exact_bounds_not_refuted(C, B, dmin, dmax)
    return ok


def _eig_enclosures(M) -> list:
    cp = linalg.charpoly(M)
    return isolate_real_roots(cp, Interval(None, None), Fraction(1, 2**60))


def _exact_bounds_not_refuted(C, B, dmin: Fraction, dmax: Fraction) -> bool:
    """No eigenvalue enclosure of ``C`` lies wholly outside the enclosed bounds."""
    eb = _eig_enclosures(B)
    ec = _eig_enclosures(C)
    # dmin, dmax >= 0 for PSD A, so scaling preserves enclosure order
    lower = dmin * eb[0].lo
    upper = dmax * eb[-1].hi
    return all(e.hi >= lower and e.lo <= upper for e in ec)


def invertibility_transport(A, alpha, k: int) -> bool:
    """``A(k)`` invertible iff ``(A o D)(k)`` invertible, ``D = (alpha^(i+j-1))``."""
    A = linalg.rat_matrix(A)
    n = len(A)
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    AD = hadamard(A, scaling_matrix(alpha, n))
    a_inv = linalg.det(linalg.leading_block(A, k)) != 0
    ad_inv = linalg.det(linalg.leading_block(AD, k)) != 0
    return a_inv == ad_inv


def affine_transport_loewner(f: RatPoly, n: int, s, c, t0) -> bool:
    """Verify ``M_n(f o g; t0) == M_n(f; g(t0)) o (s^(i+j-1))`` with ``g(t) = s t + c``."""
    s, c, t0 = as_rat(s), as_rat(c), as_rat(t0)
    if s == 0:
        raise ValueError("slope must be nonzero")
    lhs = eval_loewner(build_loewner(compose_affine(f, s, c), n), t0)
    rhs = hadamard(eval_loewner(build_loewner(f, n), s * t0 + c), scaling_matrix(s, n))
    return lhs == rhs
