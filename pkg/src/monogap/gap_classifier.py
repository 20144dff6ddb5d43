"""Place a polynomial in the chain ``P_1 ⊇ P_2 ⊇ ...`` on intervals ``[0, alpha)``.

Each order ``n`` is settled by the first test that applies:

1. the degree gate (no polynomial of degree ``1 < d < 2n-1`` is n-monotone),
2. a Loewner certificate from :func:`certify_Pn`,
3. a principal minor of ``M_n(f; t)`` negative near 0,
4. the Hankel rank obstruction of the moments at 0, seen at order ``n - 1``.

Anything else is ``Unknown``. Once some order is excluded every higher
order is excluded too, since the classes are nested.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .hankel_moments import moment_flags
from .loewner import PnCertificate, PnFalsification, certify_Pn, falsify_Pn_near_zero
from .ratpoly import RatPoly

DEFAULT_NMAX = 6


class DegreeGate(enum.Enum):
    FORBIDDEN = "Forbidden"
    GAP_IF_MEMBER = "GapIfMember"
    UNCONSTRAINED = "Unconstrained"


class UnboundedGate(enum.Enum):
    AFFINE_ADMISSIBLE = "AffineAdmissible"
    REJECTED = "Rejected"


class Status(enum.Enum):
    MEMBER = "Member"
    EXCLUDED_BY_DEGREE = "ExcludedByDegree"
    EXCLUDED_BY_MINOR = "ExcludedByMinor"
    EXCLUDED_BY_RANK_OBSTRUCTION = "ExcludedByRankObstruction"
    UNKNOWN = "Unknown"

    @property
    def excluded(self) -> bool:
        return self.value.startswith("Excluded")


def degree_gate(deg: int, n: int) -> DegreeGate:
    if deg < 0 or n < 1:
        raise ValueError("need deg >= 0 and n >= 1")
    if deg <= 1:
        return DegreeGate.UNCONSTRAINED
    if deg < 2 * n - 1:
        return DegreeGate.FORBIDDEN
    if deg in (2 * n - 1, 2 * n):
        return DegreeGate.GAP_IF_MEMBER
    return DegreeGate.UNCONSTRAINED


def unbounded_gate(f: RatPoly) -> UnboundedGate:
    """Only ``a t + b`` with ``a >= 0`` is monotone of every order on a half-line."""
    if f.degree <= 1 and f.coeff(1) >= 0:
        return UnboundedGate.AFFINE_ADMISSIBLE
    return UnboundedGate.REJECTED


@dataclass(frozen=True)
class OrderStatus:
    n: int
    status: Status
    alpha: Optional[Fraction] = None
    certificate: Optional[PnCertificate] = None
    falsification: Optional[PnFalsification] = None
    # order whose exclusion this one inherits, if any
    inherited_from: Optional[int] = None
    note: str = ""


@dataclass
class GapVerdict:
    f: RatPoly
    per_n: list[OrderStatus] = field(default_factory=list)
    gap: Optional[tuple[int, Optional[Fraction]]] = None

    def status(self, n: int) -> OrderStatus:
        return self.per_n[n - 1]

    def consistent(self) -> bool:
        """No Member at any order above an excluded one."""
        seen_excluded = False
        for rec in self.per_n:
            if rec.status.excluded:
                seen_excluded = True
            elif rec.status is Status.MEMBER and seen_excluded:
                return False
        return True


def nmax_cap() -> int:
    raw = os.environ.get("MONOGAP_NMAX")
    if raw is None:
        return DEFAULT_NMAX
    cap = int(raw)
    if cap < 1:
        raise ValueError("MONOGAP_NMAX must be a positive integer")
    return cap


def classify_order(f: RatPoly, n: int, alpha_hint: Optional[Fraction] = None) -> OrderStatus:
    """Settle a single order ``n`` without looking at the others."""
    gate = degree_gate(max(f.degree, 0), n)
    if gate is DegreeGate.FORBIDDEN:
        return OrderStatus(n, Status.EXCLUDED_BY_DEGREE,
                           note=f"1 < deg {f.degree} < {2 * n - 1}")
    cert = certify_Pn(f, n, alpha_hint)
    if cert is not None:
        return OrderStatus(n, Status.MEMBER, cert.alpha, certificate=cert)
    fals = falsify_Pn_near_zero(f, n)
    if fals is not None:
        return OrderStatus(n, Status.EXCLUDED_BY_MINOR, falsification=fals,
                           note=f"principal minor {fals.indices} negative near 0")
    if n >= 2 and moment_flags(f, n - 1).extension_obstruction:
        return OrderStatus(n, Status.EXCLUDED_BY_RANK_OBSTRUCTION,
                           note=f"Hankel rank below matrix rank at order {n - 1}")
    return OrderStatus(n, Status.UNKNOWN)


def classify(f: RatPoly, n_max: Optional[int] = None) -> GapVerdict:
    cap = nmax_cap()
    if n_max is None:
        n_max = cap
    if not 1 <= n_max <= cap:
        raise ValueError(f"n_max must lie in 1..{cap} (MONOGAP_NMAX)")
    verdict = GapVerdict(f)
    first_excluded: Optional[OrderStatus] = None
    for n in range(1, n_max + 1):
        rec = classify_order(f, n)
        if first_excluded is not None and not rec.status.excluded:
            rec = OrderStatus(n, first_excluded.status, inherited_from=first_excluded.n,
                              note=f"contained in the excluded order {first_excluded.n}")
        if rec.status.excluded and first_excluded is None:
            first_excluded = rec
        verdict.per_n.append(rec)
    for lo, hi in zip(verdict.per_n, verdict.per_n[1:]):
        if lo.status is Status.MEMBER and hi.status.excluded:
            verdict.gap = (lo.n, lo.alpha)
            break
    return verdict
