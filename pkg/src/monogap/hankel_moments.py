"""Hankel matrices at the origin, Hankel rank, and truncated moment problems.

For ``f(t) = c + b_0 t + b_1 t^2 + ...`` the matrix ``M_n(f; 0)`` is the Hankel
matrix ``(b_{i+j})`` of the Taylor coefficients.  Positive definiteness is
equivalent to the moments ``b_0..b_{2n-2}`` coming from a measure with at
least ``n`` atoms; such a measure is produced here by Gaussian-quadrature
construction from the monic orthogonal polynomial.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .loewner import is_psd_exact
from .ratpoly import RatPoly, as_rat, poly_eval, taylor_coeff
from .realroots import Interval, RootEnclosure, isolate_real_roots

log = logging.getLogger(__name__)

# starting enclosure width for irrational atoms; construction squares it
# until weights certify and moment intervals are narrower than MOMENT_WIDTH
ATOM_TOL = Fraction(1, 2**80)
MIN_ATOM_TOL = Fraction(1, 2**1280)
MOMENT_WIDTH = Fraction(1, 10**12)


class SingularHankelError(ValueError):
    pass


def hankel_matrix(gamma: Sequence) -> list[list[Fraction]]:
    """``(gamma_{i+j})_{i,j=0..k}`` for an odd-length sequence ``gamma_0..gamma_{2k}``."""
    gamma = [as_rat(g) for g in gamma]
    if len(gamma) % 2 == 0:
        raise ValueError("a Hankel moment sequence has odd length 2k+1")
    k = len(gamma) // 2
    return [[gamma[i + j] for j in range(k + 1)] for i in range(k + 1)]


def moment_sequence(f: RatPoly, n: int) -> list[Fraction]:
    """``b_0..b_{2n-2}`` with ``b_k = f^(k+1)(0)/(k+1)!``; zero-padded past ``deg f``."""
    return [taylor_coeff(f, k + 1, 0) for k in range(2 * n - 1)]


def hankel_at_zero(f: RatPoly, n: int) -> list[list[Fraction]]:
    return hankel_matrix(moment_sequence(f, n))


def matrix_rank_exact(A: Sequence[Sequence]) -> int:
    return linalg.matrix_rank(linalg.rat_matrix(A))


def hankel_rank(gamma: Sequence, require_psd: bool = True) -> int:
    """Smallest ``i >= 1`` whose column ``v_i`` depends on ``v_0..v_{i-1}``.

    Returns ``k + 1`` when the ``k + 1`` columns are independent. For a PSD
    Hankel matrix this equals the smallest ``l`` with a singular leading
    ``(l+1) x (l+1)`` block; the column form is used because it stays
    meaningful for indefinite sequences too.

    A non-PSD Hankel matrix raises ``ValueError`` unless ``require_psd``
    is switched off.
    """
    H = hankel_matrix(gamma)
    if require_psd:
        check = is_psd_exact(H)
        if not check:
            raise ValueError(f"Hankel matrix is not PSD (negative principal minor {check.witness})")
    k = len(H) - 1
    cols = linalg.transpose(H)
    for i in range(1, k + 1):
        if linalg.matrix_rank(cols[: i + 1]) == linalg.matrix_rank(cols[:i]):
            return i
    return k + 1


def hankel_rank_by_minors(gamma: Sequence) -> int:
    """Smallest ``l >= 1`` whose leading ``(l+1)``-block is singular (PSD definition)."""
    H = hankel_matrix(gamma)
    k = len(H) - 1
    for l in range(1, k + 1):
        if linalg.det(linalg.leading_block(H, l + 1)) == 0:
            return l
    return k + 1


# -- exact interval arithmetic for irrational atoms ------------------------

@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational ends; supports + - * and positive division."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = as_rat(x)
        return cls(x, x)

    @classmethod
    def of(cls, x) -> "RatInterval":
        if isinstance(x, RatInterval):
            return x
        if isinstance(x, RootEnclosure):
            return cls(x.lo, x.hi)
        return cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= as_rat(x) <= self.hi

    def __add__(self, o):
        o = RatInterval.of(o)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-RatInterval.of(o))

    def __mul__(self, o):
        o = RatInterval.of(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RatInterval.of(o)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * RatInterval(1 / o.hi, 1 / o.lo)

    def __pow__(self, k: int):
        out = RatInterval.point(1)
        for _ in range(k):
            out = out * self
        return out


def _poly_on(p: RatPoly, x) -> RatInterval:
    if not isinstance(x, (RatInterval, RootEnclosure)):
        return RatInterval.point(poly_eval(p, x))
    x = RatInterval.of(x)
    acc = RatInterval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


Atom = Union[Fraction, RootEnclosure]
Weight = Union[Fraction, RatInterval]


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple[Atom, ...]
    weights: tuple[Weight, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights differ in length")

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def exact(self) -> bool:
        return all(isinstance(a, Fraction) for a in self.atoms)

    def moment(self, k: int) -> Union[Fraction, RatInterval]:
        """``sum w_i x_i^k``; exact for rational atoms, otherwise an enclosing interval."""
        if self.exact:
            return sum((w * a**k for a, w in zip(self.atoms, self.weights)), Fraction(0))
        acc = RatInterval.point(0)
        for a, w in zip(self.atoms, self.weights):
            acc = acc + RatInterval.of(w) * RatInterval.of(a) ** k
        return acc

    def reproduces(self, b: Sequence, max_width=Fraction(1, 10**9)) -> bool:
        for k, bk in enumerate(b):
            m = self.moment(k)
            if isinstance(m, RatInterval):
                if as_rat(bk) not in m or m.width >= max_width:
                    return False
            elif m != as_rat(bk):
                return False
        return True


def construct_atomic_measure(b: Sequence, tol: Fraction = ATOM_TOL,
                             max_width: Fraction = MOMENT_WIDTH) -> AtomicMeasure:
    """n-atom measure whose moments ``0..2n-2`` are ``b`` (length ``2n-1``).

    An optional ``b_{2n-1}`` may be passed (length ``2n``); otherwise that free
    moment is fixed at 0. Atoms are the roots of the monic degree-``n``
    orthogonal polynomial, weights ``w_i = L(P(t)/(t - x_i)) / P'(x_i)`` where
    ``L`` is the moment functional. Irrational atoms come back as enclosures
    and their weights as exact rational intervals; enclosures are tightened
    until every weight is certified positive and every moment interval is
    narrower than ``max_width``.
    """
    b = [as_rat(x) for x in b]
    if len(b) % 2 == 1:
        b = b + [Fraction(0)]
    n = len(b) // 2
    H = [[b[i + j] for j in range(n)] for i in range(n)]
    if any(d <= 0 for d in linalg.leading_minors(H)):
        raise SingularHankelError("Hankel matrix is not positive definite")
    extended = b + [Fraction(0)]  # b_{2n} never enters the n x n system
    rhs = [-extended[i + n] for i in range(n)]
    c = linalg.solve(H, rhs)
    P = RatPoly(c + [Fraction(1)])
    q = _quotient_functional(P, b)
    dP = P.derivative()
    while True:
        roots = isolate_real_roots(P, Interval(None, None), tol)
        if len(roots) != n:
            raise ArithmeticError(f"orthogonal polynomial has {len(roots)} real roots, expected {n}")
        measure = _quadrature(roots, q, dP)
        if measure is not None and (measure.exact or all(
                measure.moment(k).width < max_width for k in range(len(b)))):
            return measure
        if tol < MIN_ATOM_TOL:
            raise ArithmeticError("could not certify quadrature weights")
        tol = tol * tol


def _quadrature(roots, q: RatPoly, dP: RatPoly) -> Optional[AtomicMeasure]:
    """Weights at the given atoms, or ``None`` if an enclosure is too loose to certify them."""
    atoms: list[Atom] = []
    weights: list[Weight] = []
    for r in roots:
        if r.exact is not None:
            w = poly_eval(q, r.exact) / poly_eval(dP, r.exact)
            if w <= 0:
                raise ArithmeticError("nonpositive quadrature weight")
            atoms.append(r.exact)
        else:
            try:
                w = _poly_on(q, r) / _poly_on(dP, r)
            except ZeroDivisionError:
                return None
            if w.lo <= 0:
                return None
            atoms.append(r)
        weights.append(w)
    return AtomicMeasure(tuple(atoms), tuple(weights))


def _quotient_functional(P: RatPoly, b: Sequence[Fraction]) -> RatPoly:
    """``A(x) = L_t[(P(t) - P(x)) / (t - x)]`` as a polynomial in ``x``.

    For a root ``x`` of ``P`` this is ``L(P(t)/(t - x))``.  With
    ``(t^m - x^m)/(t - x) = sum_{j<m} t^j x^(m-1-j)`` the functional acts
    termwise.
    """
    out = [Fraction(0)] * max(P.degree, 1)
    for m, pm in enumerate(P.coeffs):
        for j in range(m):
            out[m - 1 - j] += pm * b[j]
    return RatPoly(out)


def annihilating_polynomial(atoms: Sequence[Fraction]) -> RatPoly:
    return RatPoly.from_roots(atoms)


def measure_hankel(measure: AtomicMeasure, n: int) -> list[list[Fraction]]:
    """``(sum w x^{i+j})_{i,j<n}`` for an exact (rational) measure."""
    if not measure.exact:
        raise ValueError("measure_hankel needs rational atoms")
    moments = [measure.moment(k) for k in range(2 * n - 1)]
    return [[moments[i + j] for j in range(n)] for i in range(n)]


@dataclass
class MomentReport:
    n: int
    b: list[Fraction]
    pd: bool
    psd: bool
    hankel_rank: int
    matrix_rank: int
    extension_obstruction: bool
    measure: Optional[AtomicMeasure] = None
    measure_moments: int = 0  # moments b_0..b_{measure_moments-1} are matched
    degree_deficient: bool = False
    claims: list[str] = field(default_factory=list)


def moment_flags(f: RatPoly, n: int) -> MomentReport:
    b = moment_sequence(f, n)
    H = hankel_matrix(b)
    deficient = f.degree < 2 * n - 1
    pd = all(d > 0 for d in linalg.leading_minors(H))
    psd = bool(is_psd_exact(H))
    r = hankel_rank(b, require_psd=False)
    rank = matrix_rank_exact(H)
    obstruction = r < rank
    report = MomentReport(n, b, pd, psd, r, rank, obstruction, degree_deficient=deficient)
    if deficient:
        report.claims.append(f"degree {f.degree} < {2 * n - 1}: moments zero-padded")
    if pd:
        report.measure = construct_atomic_measure(b)
        report.measure_moments = 2 * n - 1
        report.claims.append(f"M_{n}(f;0) > 0: {n}-atom measure represents b_0..b_{2 * n - 2}")
    elif psd and r < n + 1 and r >= 1:
        # the r x r leading block is invertible and PSD, hence PD; pass the
        # actual next moment so the measure is the one the data suggests
        sub = b[: 2 * r]
        try:
            report.measure = construct_atomic_measure(sub)
            report.measure_moments = 2 * r - 1
            report.claims.append(
                f"PSD singular, Hankel rank {r}: measure represents b_0..b_{2 * r - 2}")
        except SingularHankelError:
            log.debug("leading %d-block not PD; no measure attached", r)
    if obstruction:
        report.claims.append(
            f"Hankel rank {r} < rank {rank}: f is not in P_{n + 1}([0, alpha)) for any alpha > 0")
    return report
