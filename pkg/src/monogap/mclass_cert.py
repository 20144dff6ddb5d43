"""Partial-fraction certificates showing ``f`` is not in the class ``M_n([0, a])``.

Given nodes ``0 < l_1 < ... < l_2n < a`` and a polynomial ``p`` with
``p(0) = 0``, ``p >= 0`` on ``t > 0`` and ``deg p <= 2n - 1``, the residues

    a_k = p(-l_k) / (l_k * pi'(-l_k)),    pi(t) = prod_j (t + l_j),

satisfy ``sum_k a_k l_k / (t + l_k) = p(t) / pi(t) >= 0`` for ``t > 0`` and
``sum_k a_k = p(0)/pi(0) = 0``. A negative value of ``sum_k a_k f(l_k)`` then
shows ``f`` violates the defining implication of ``M_n``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .ratpoly import RatPoly, as_rat, poly_eval, squarefree_decomposition, standard_gap_poly
from .realroots import nonnegative_on_positive_axis

log = logging.getLogger(__name__)


class PremiseError(ValueError):
    pass


@dataclass(frozen=True)
class PremiseFlags:
    sum_zero: bool
    p_nonneg_on_positives: bool
    p_vanishes_at_zero: bool
    degree_bound: bool
    reconstruction_ok: bool

    @property
    def all_ok(self) -> bool:
        return all(vars(self).values())

    def failures(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


@dataclass(frozen=True)
class MClassCertificate:
    f: RatPoly
    n: int
    a: Fraction
    p: RatPoly
    lambdas: tuple[Fraction, ...]
    a_coeffs: tuple[Fraction, ...]
    premise: PremiseFlags
    sum_value: Fraction

    @property
    def falsifies(self) -> bool:
        return self.premise.all_ok and self.sum_value < 0

    def verify(self) -> bool:
        """Recompute residues, premises and the sum from the inputs alone."""
        try:
            again = build_certificate(self.f, self.n, self.a, self.p, self.lambdas)
        except PremiseError:
            return False
        return (again.a_coeffs == self.a_coeffs and again.sum_value == self.sum_value
                and again.premise == self.premise)


def _node_products(lambdas: Sequence[Fraction]) -> list[RatPoly]:
    """``prod_{j != k} (t + l_j)`` for each k."""
    out = []
    for k in range(len(lambdas)):
        out.append(RatPoly.from_roots(-l for j, l in enumerate(lambdas) if j != k))
    return out


def _check_nodes(lambdas: Sequence[Fraction]) -> list[Fraction]:
    lambdas = [as_rat(l) for l in lambdas]
    if any(l <= 0 for l in lambdas):
        raise PremiseError("nodes must be positive")
    if len(set(lambdas)) != len(lambdas):
        raise PremiseError("nodes must be distinct")
    return lambdas


def partial_fraction_coeffs(p: RatPoly, lambdas: Sequence) -> list[Fraction]:
    lambdas = _check_nodes(lambdas)
    if p.degree > len(lambdas) - 1:
        raise PremiseError(f"deg p = {p.degree} exceeds {len(lambdas) - 1}")
    coeffs = []
    for k, lk in enumerate(lambdas):
        # pi'(-l_k) = prod_{j != k} (l_j - l_k)
        dpi = prod((lj - lk for j, lj in enumerate(lambdas) if j != k), start=Fraction(1))
        coeffs.append(poly_eval(p, -lk) / (lk * dpi))
    if reconstruct(lambdas, coeffs) != p:
        raise ArithmeticError("partial-fraction reconstruction failed")
    return coeffs


def reconstruct(lambdas: Sequence[Fraction], a_coeffs: Sequence[Fraction]) -> RatPoly:
    """``sum_k a_k l_k prod_{j != k}(t + l_j)``, which must equal ``p``."""
    acc = RatPoly()
    for ak, lk, q in zip(a_coeffs, lambdas, _node_products(lambdas)):
        acc = acc + q * (ak * lk)
    return acc


def premise_check(p: RatPoly, lambdas: Sequence, a_coeffs: Sequence) -> PremiseFlags:
    lambdas = [as_rat(l) for l in lambdas]
    a_coeffs = [as_rat(a) for a in a_coeffs]
    return PremiseFlags(
        sum_zero=sum(a_coeffs, Fraction(0)) == 0,
        p_nonneg_on_positives=p.is_zero() or nonnegative_on_positive_axis(p),
        p_vanishes_at_zero=poly_eval(p, 0) == 0,
        degree_bound=p.degree <= len(lambdas) - 1,
        reconstruction_ok=reconstruct(lambdas, a_coeffs) == p,
    )


def build_certificate(f: RatPoly, n: int, a, p: RatPoly, lambdas: Sequence) -> MClassCertificate:
    """Assemble a certificate whatever its verdict; premises are flagged, not enforced."""
    a = as_rat(a)
    lambdas = _check_nodes(lambdas)
    if len(lambdas) != 2 * n:
        raise PremiseError(f"need {2 * n} nodes, got {len(lambdas)}")
    if any(not (0 < l < a) for l in lambdas):
        raise PremiseError(f"nodes must lie in (0, {a})")
    coeffs = partial_fraction_coeffs(p, lambdas)
    flags = premise_check(p, lambdas, coeffs)
    total = sum((ak * poly_eval(f, lk) for ak, lk in zip(coeffs, lambdas)), Fraction(0))
    return MClassCertificate(f, n, a, p, tuple(lambdas), tuple(coeffs), flags, total)


def mclass_falsify(f: RatPoly, n: int, a, p: RatPoly, lambdas: Sequence) -> Optional[MClassCertificate]:
    """Certificate that ``f`` is not in ``M_n([0, a])``, or ``None``."""
    try:
        cert = build_certificate(f, n, a, p, lambdas)
    except PremiseError as exc:
        log.warning("premise rejected: %s", exc)
        return None
    if not cert.premise.all_ok:
        log.warning("premise failed: %s", ", ".join(cert.premise.failures()))
        return None
    return cert if cert.sum_value < 0 else None


def mobius_premise_identity(lambdas: Sequence, a_coeffs: Sequence) -> bool:
    """Check ``sum a_k (l_k t - 1)/(t + l_k) = (t + 1/t) sum a_k l_k/(t + l_k)``.

    Both sides are multiplied by ``t * pi(t)`` and compared as polynomials.
    """
    lambdas = [as_rat(l) for l in lambdas]
    a_coeffs = [as_rat(x) for x in a_coeffs]
    if sum(a_coeffs, Fraction(0)) != 0:
        raise ValueError("identity requires sum of coefficients zero")
    t = RatPoly([0, 1])
    lhs, rhs = RatPoly(), RatPoly()
    for ak, lk, q in zip(a_coeffs, lambdas, _node_products(lambdas)):
        lhs = lhs + t * RatPoly([-1, lk]) * q * ak
        rhs = rhs + RatPoly([1, 0, 1]) * q * (ak * lk)
    return lhs == rhs


def _rational_sqrt(c: Fraction) -> Optional[Fraction]:
    from math import isqrt

    if c < 0:
        return None
    rn, rd = isqrt(c.numerator), isqrt(c.denominator)
    if rn * rn == c.numerator and rd * rd == c.denominator:
        return Fraction(rn, rd)
    return None


def sos_decomposition_check(p: RatPoly) -> Optional[tuple[RatPoly, RatPoly]]:
    """Write ``p = t q1^2 + q2^2`` with rational ``q1, q2``, when that is easy.

    Handles ``p = c t^m s(t)^2`` with ``c`` a rational square; anything else
    (e.g. factors like ``t^2 + 1`` that need complex pairing) returns ``None``.
    """
    if p.is_zero():
        return RatPoly(), RatPoly()
    t_power = 0
    rest = p
    while rest.coeff(0) == 0:
        rest = RatPoly(rest.coeffs[1:])
        t_power += 1
    root_c = _rational_sqrt(rest.lc)
    if root_c is None:
        return None
    half = RatPoly([root_c])
    for factor, mult in squarefree_decomposition(rest):
        if mult % 2:
            return None
        half = half * factor ** (mult // 2)
    if t_power % 2 == 0:
        q1, q2 = RatPoly(), half * RatPoly.monomial(t_power // 2)
    else:
        q1, q2 = half * RatPoly.monomial(t_power // 2), RatPoly()
    t = RatPoly([0, 1])
    if t * q1 * q1 + q2 * q2 != p:
        return None
    return q1, q2


# node presets for the g_n counterexamples
PRESETS = {
    "paper-n2": dict(n=2, step=Fraction(1, 8), p_degree=2),
    "paper-n3": dict(n=3, step=Fraction(1, 30), p_degree=4),
    "paper-n4": dict(n=4, step=Fraction(1, 200), p_degree=6),
    "paper-n5": dict(n=5, step=Fraction(1, 1250), p_degree=6),
}


def preset_inputs(name: str):
    """``(f, n, a, p, lambdas)`` for a named preset.

    ``a`` is the certified ``alpha`` of ``g_n``, so the certificate speaks
    about the same interval on which ``g_n`` is known to be n-monotone.
    """
    from .loewner import certify_Pn

    try:
        spec = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    n, step = spec["n"], spec["step"]
    g = standard_gap_poly(n)
    lambdas = [k * step for k in range(1, 2 * n + 1)]
    a = certify_Pn(g, n).alpha
    return g, n, a, RatPoly.monomial(spec["p_degree"]), lambdas


def run_preset(name: str) -> MClassCertificate:
    return build_certificate(*preset_inputs(name))
