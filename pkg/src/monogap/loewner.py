"""Loewner matrices ``M_n(f; t)`` and order-n monotonicity certificates.

``M_n(f; t)`` has (i, j) entry ``f^(i+j-1)(t) / (i+j-1)!`` (1-based), i.e. the
Taylor coefficients of ``f`` at ``t`` arranged as a Hankel matrix.  A
certificate for ``f`` in ``P_n([0, alpha))`` is the conjunction of

* ``M_n(f; 0)`` positive semidefinite (decided exactly),
* every leading principal minor of ``M_n(f; t)`` strictly positive on ``(0, alpha)``,
* ``f^(2n-3) > 0`` and ``f^(2n-1) >= 0`` on ``[0, alpha)``,

each established with a certified sign computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from . import linalg
from .ratpoly import RatPoly, as_rat, poly_eval
from .realroots import (
    DEFAULT_TOL,
    Interval,
    SignReport,
    sign_on_interval,
    smallest_positive_root,
)


@dataclass(frozen=True)
class LoewnerMatrix:
    f: RatPoly
    n: int
    entries: tuple[tuple[RatPoly, ...], ...]

    def entry(self, i: int, j: int) -> RatPoly:
        """1-based access, matching the usual ``M_n(f; t)_{ij}`` indexing."""
        return self.entries[i - 1][j - 1]

    def rows(self) -> list[list[RatPoly]]:
        return [list(r) for r in self.entries]


def build_loewner(f: RatPoly, n: int) -> LoewnerMatrix:
    if n < 1:
        raise ValueError("order n must be >= 1")
    # one polynomial per anti-diagonal k = i + j - 1
    diag = [f.derivative(k) / factorial(k) for k in range(1, 2 * n)]
    entries = tuple(tuple(diag[i + j] for j in range(n)) for i in range(n))
    return LoewnerMatrix(f, n, entries)


def leading_minor_polys(M: LoewnerMatrix) -> list[RatPoly]:
    return [_as_poly(d) for d in linalg.leading_minors(M.rows())]


def principal_minor_polys(M: LoewnerMatrix):
    """Yield ``(indices, det)`` over all principal minors; indices are 1-based."""
    for idx, d in linalg.principal_minors(M.rows()):
        yield tuple(i + 1 for i in idx), _as_poly(d)


def _as_poly(d) -> RatPoly:
    return d if isinstance(d, RatPoly) else RatPoly([d])


def eval_loewner(M: LoewnerMatrix, t0) -> list[list[Fraction]]:
    t0 = as_rat(t0)
    return [[poly_eval(p, t0) for p in row] for row in M.entries]


@dataclass(frozen=True)
class PsdCheck:
    psd: bool
    charpoly: RatPoly
    witness: Optional[tuple[tuple[int, ...], Fraction]] = None

    def __bool__(self):
        return self.psd


def is_psd_exact(A: Sequence[Sequence]) -> PsdCheck:
    """Decide ``A >= 0`` exactly for a symmetric rational matrix.

    The characteristic polynomial ``det(xI - A) = sum c_k x^k`` of a
    symmetric matrix has only real roots, and they are all nonnegative
    exactly when the coefficients alternate in sign: ``(-1)^(n-k) c_k >= 0``.
    On failure a negative principal minor is returned as witness
    (1-based index set, value).
    """
    A = linalg.rat_matrix(A)
    if not linalg.is_symmetric(A):
        raise ValueError("is_psd_exact needs a symmetric matrix")
    n = len(A)
    cp = linalg.charpoly(A)
    psd = all((-1) ** (n - k) * cp.coeff(k) >= 0 for k in range(n + 1))
    if psd:
        return PsdCheck(True, cp)
    for idx, d in linalg.principal_minors(A):
        if d < 0:
            return PsdCheck(False, cp, (tuple(i + 1 for i in idx), d))
    raise AssertionError("non-PSD symmetric matrix without a negative principal minor")  # pragma: no cover


@dataclass(frozen=True)
class PnCertificate:
    f: RatPoly
    n: int
    alpha: Optional[Fraction]  # None: no finite right endpoint was needed
    minors: tuple[RatPoly, ...]
    minor_evidence: tuple[SignReport, ...]
    side_conditions: dict = field(default_factory=dict)
    psd_at_zero: bool = True
    alpha_exact: bool = False

    @property
    def interval(self) -> Interval:
        return Interval(Fraction(0), self.alpha, True, False)

    def verify(self) -> bool:
        """Recompute every claim from ``f``, ``n`` and ``alpha`` alone."""
        return verify_pn_certificate(self.f, self.n, self.alpha)


@dataclass(frozen=True)
class PnFalsification:
    f: RatPoly
    n: int
    t0: Fraction
    indices: tuple[int, ...]
    value: Fraction
    minor: RatPoly
    # the minor is negative at every point of this interval
    negative_on: Optional[Interval] = None

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else (1 if self.value > 0 else 0)


def _side_polys(f: RatPoly, n: int) -> tuple[Optional[RatPoly], Optional[RatPoly]]:
    if n < 2:
        return None, None
    return f.derivative(2 * n - 3), f.derivative(2 * n - 1)


def _is_affine_nondecreasing(f: RatPoly) -> bool:
    return f.degree <= 1 and f.coeff(1) >= 0


def verify_pn_certificate(f: RatPoly, n: int, alpha: Optional[Fraction]) -> bool:
    if _is_affine_nondecreasing(f):
        return True
    if alpha is not None and alpha <= 0:
        return False
    M = build_loewner(f, n)
    if not is_psd_exact(eval_loewner(M, 0)):
        return False
    open_iv = Interval(Fraction(0), alpha, False, False)
    half_open = Interval(Fraction(0), alpha, True, False)
    for D in leading_minor_polys(M):
        if not sign_on_interval(D, open_iv).strictly_positive:
            return False
    s1, s2 = _side_polys(f, n)
    if s1 is not None:
        if not sign_on_interval(s1, half_open).strictly_positive:
            return False
        if not sign_on_interval(s2, half_open).nonnegative:
            return False
    return True


def certify_Pn(
    f: RatPoly,
    n: int,
    alpha_hint: Optional[Fraction] = None,
    tol: Fraction = DEFAULT_TOL,
) -> Optional[PnCertificate]:
    """Certify ``f`` in ``P_n([0, alpha))`` for the largest alpha this method reaches.

    ``alpha`` is the least positive root over the leading minors and the two
    derivative side conditions (its lower bracket end when irrational), capped by
    ``alpha_hint``. Returns ``None`` if ``M_n(f; 0)`` is not PSD or no
    positive alpha works. Nondecreasing affine ``f`` gets ``alpha=None``
    (monotone on the whole line).
    """
    if n < 1:
        raise ValueError("order n must be >= 1")
    if _is_affine_nondecreasing(f):
        M = build_loewner(f, n)
        return PnCertificate(f, n, None if alpha_hint is None else as_rat(alpha_hint),
                             tuple(leading_minor_polys(M)), (), {}, True, False)
    M = build_loewner(f, n)
    if not is_psd_exact(eval_loewner(M, 0)):
        return None
    minors = leading_minor_polys(M)
    if any(D.is_zero() for D in minors):
        return None
    s1, s2 = _side_polys(f, n)
    bounding = list(minors)
    if s1 is not None:
        if poly_eval(s1, 0) <= 0:
            return None
        bounding.append(s1)
        if not s2.is_zero():
            bounding.append(s2)

    alpha = None if alpha_hint is None else as_rat(alpha_hint)
    alpha_exact = alpha is not None
    for p in bounding:
        r = smallest_positive_root(p, tol)
        if r is None:
            continue
        bound = r.exact if r.exact is not None else r.lo
        if alpha is None or bound < alpha:
            alpha, alpha_exact = bound, r.exact is not None
    if alpha is not None and alpha <= 0:
        return None

    open_iv = Interval(Fraction(0), alpha, False, False)
    half_open = Interval(Fraction(0), alpha, True, False)
    evidence = tuple(sign_on_interval(D, open_iv) for D in minors)
    if not all(e.strictly_positive for e in evidence):
        return None
    side = {}
    if s1 is not None:
        side[f"f^({2 * n - 3}) > 0"] = sign_on_interval(s1, half_open)
        side[f"f^({2 * n - 1}) >= 0"] = sign_on_interval(s2, half_open)
        if not side[f"f^({2 * n - 3}) > 0"].strictly_positive:
            return None
        if not side[f"f^({2 * n - 1}) >= 0"].nonnegative:
            return None
    return PnCertificate(f, n, alpha, tuple(minors), evidence, side, True, alpha_exact)


def falsify_Pn_near_zero(f: RatPoly, n: int) -> Optional[PnFalsification]:
    """Find a principal minor of ``M_n(f; t)`` that is negative at or just right of 0.

    A minor negative at ``t0`` makes ``M_n(f; t0)`` indefinite, which rules out
    ``f`` in ``P_n`` of any interval containing ``t0``. A minor whose lowest
    nonzero coefficient is negative is negative on some ``(0, eps)``, so this
    excludes every ``[0, alpha)``.
    """
    minors = [(idx, D) for idx, D in principal_minor_polys(build_loewner(f, n)) if not D.is_zero()]
    # a minor already negative at 0 is the stronger witness, so look for one first
    for idx, D in minors:
        v0 = poly_eval(D, 0)
        if v0 < 0:
            return PnFalsification(f, n, Fraction(0), idx, v0, D, Interval(0, _first_root(D), True, False))
    for idx, D in minors:
        if D.lowest_term()[1] < 0:
            eps = _first_root(D)
            t0 = Fraction(1) if eps is None else eps / 2
            return PnFalsification(f, n, t0, idx, poly_eval(D, t0), D, Interval(0, eps, False, False))
    return None


def _first_root(D: RatPoly) -> Optional[Fraction]:
    r = smallest_positive_root(D)
    return None if r is None else (r.exact if r.exact is not None else r.lo)


def quintic_family(lam, c) -> RatPoly:
    """``t + lam t^2 + lam^2 t^3 + lam^3 t^4 + c t^5``: Hankel rank 1 at the origin."""
    lam, c = as_rat(lam), as_rat(c)
    return RatPoly([0, 1, lam, lam**2, lam**3, c])


def quintic_family_detM3(lam, c) -> RatPoly:
    return leading_minor_polys(build_loewner(quintic_family(lam, c), 3))[2]
