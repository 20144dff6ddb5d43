"""Certified real-root counting and sign determination on rational intervals.

Everything here is exact: Sturm sequences count distinct roots, bisection
with rational midpoints refines enclosures, and verdicts never rely on
floating point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Optional

from .ratpoly import RatPoly, as_rat, divide_out_root, poly_eval, poly_gcd, squarefree_part

DEFAULT_TOL = Fraction(1, 2**40)


@dataclass(frozen=True)
class Interval:
    """Rational interval; ``lo``/``hi`` of ``None`` mean -inf/+inf (always open)."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo = None if self.lo is None else as_rat(self.lo)
        hi = None if self.hi is None else as_rat(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is None:
            object.__setattr__(self, "lo_closed", False)
        if hi is None:
            object.__setattr__(self, "hi_closed", False)
        if lo is not None and hi is not None:
            if lo > hi:
                raise ValueError(f"empty interval: lo={lo} > hi={hi}")
            if lo == hi and not (self.lo_closed and self.hi_closed):
                raise ValueError("degenerate interval must be closed at both ends")

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed_open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, False)

    @classmethod
    def open_closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, True)

    @classmethod
    def positive_axis(cls) -> "Interval":
        return cls(Fraction(0), None, False, False)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise ValueError("unbounded interval has no width")
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        x = as_rat(x)
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"


@dataclass(frozen=True)
class RootEnclosure:
    bracket: Interval
    exact: Optional[Fraction] = None
    multiplicity_hint: int = 1

    @property
    def lo(self) -> Fraction:
        return self.bracket.lo

    @property
    def hi(self) -> Fraction:
        return self.bracket.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.bracket.lo + self.bracket.hi) / 2

    def __float__(self):
        return float(self.exact if self.exact is not None else self.midpoint)


class Sign(enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    NONNEGATIVE = "Nonnegative"
    STRICTLY_NEGATIVE = "StrictlyNegative"
    NONPOSITIVE = "Nonpositive"
    MIXED = "Mixed"
    ZERO = "Zero"


@dataclass(frozen=True)
class SignReport:
    verdict: Sign
    witness: Optional[Fraction] = None

    @property
    def strictly_positive(self) -> bool:
        return self.verdict is Sign.STRICTLY_POSITIVE

    @property
    def nonnegative(self) -> bool:
        return self.verdict in (Sign.STRICTLY_POSITIVE, Sign.NONNEGATIVE, Sign.ZERO)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(f: RatPoly) -> list[RatPoly]:
    """``f, f', -rem(f, f'), ...`` with each member scaled to a unit leading coefficient.

    Positive rescaling leaves every sign pattern unchanged and keeps the
    rational coefficients from growing.
    """
    if f.is_zero():
        raise ValueError("Sturm chain of the zero polynomial is undefined")
    chain = [f / abs(f.lc)]
    if f.degree == 0:
        return chain
    d = f.derivative()
    chain.append(d / abs(d.lc))
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r / abs(r.lc))
    return chain


def sign_variations(chain: list[RatPoly], x) -> int:
    """Number of sign changes in the chain evaluated at ``x`` (zeros skipped)."""
    signs = [s for s in (_sgn(poly_eval(p, x)) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_infinity(chain: list[RatPoly], positive: bool) -> int:
    signs = []
    for p in chain:
        s = _sgn(p.lc)
        if not positive and p.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(f: RatPoly) -> Fraction:
    """Every real root of ``f`` lies strictly inside ``(-B, B)``."""
    if f.degree < 1:
        return Fraction(1)
    lc = abs(f.lc)
    return 1 + max(abs(c) / lc for c in f.coeffs[:-1])


def _open_count(sf: RatPoly, lo, hi, chain: list[RatPoly] | None = None) -> int:
    """Distinct roots of squarefree ``sf`` in the open interval (lo, hi); ends may be None."""
    if sf.degree < 1:
        return 0
    on_lo = lo is not None and poly_eval(sf, lo) == 0
    on_hi = hi is not None and poly_eval(sf, hi) == 0
    if on_lo or on_hi:
        # Sturm counts need non-root endpoints: divide those root factors out
        g = sf
        if on_lo:
            g, _ = divide_out_root(g, lo)
        if on_hi:
            g, _ = divide_out_root(g, hi)
        if g.degree < 1:
            return 0
        chain = sturm_chain(g)
    elif chain is None:
        chain = sturm_chain(sf)
    v_lo = _variations_at_infinity(chain, False) if lo is None else sign_variations(chain, lo)
    v_hi = _variations_at_infinity(chain, True) if hi is None else sign_variations(chain, hi)
    return v_lo - v_hi


def count_real_roots(f: RatPoly, interval: Interval) -> int:
    """Number of distinct real roots of ``f`` in ``interval`` (endpoint flags honoured)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    sf = squarefree_part(f)
    lo, hi = interval.lo, interval.hi
    if lo is not None and lo == hi:
        return int(poly_eval(f, lo) == 0)
    n = _open_count(sf, lo, hi)
    if lo is not None and interval.lo_closed and poly_eval(sf, lo) == 0:
        n += 1
    if hi is not None and interval.hi_closed and poly_eval(sf, hi) == 0:
        n += 1
    return n


def _midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    return (lo + hi) / 2


def _rational_root_in(sf: RatPoly, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    """The rational root of ``sf`` in [lo, hi], if one exists.

    A rational root ``p/q`` of a primitive integer polynomial has ``q`` dividing
    the leading coefficient ``L``, so ``L * root`` is an integer.  Callers
    refine the bracket to width below ``1/L`` first; then at most two
    candidates remain.
    """
    ints = sf.integer_primitive()
    L = ints[-1]
    for m in range(ceil(lo * L), floor(hi * L) + 1):
        r = Fraction(m, L)
        if poly_eval(sf, r) == 0:
            return r
    return None


def _multiplicity(f: RatPoly, sf_bracket: tuple[Fraction, Fraction], exact) -> int:
    if exact is not None:
        _, m = divide_out_root(f, exact)
        return m
    lo, hi = sf_bracket
    m, d = 1, f.derivative()
    while d.degree >= 1:
        g = poly_gcd(f, d)
        if g.degree < 1 or count_real_roots(g, Interval.open(lo, hi)) == 0:
            break
        m += 1
        d = d.derivative()
    return m


def _refine(sf: RatPoly, lo: Fraction, hi: Fraction, tol: Fraction):
    """Shrink (lo, hi) around the single simple root of ``sf`` in it.

    Returns ``(lo, hi, exact)``. The bracket is closed, contains the root,
    and has width <= tol unless the root was found exactly.
    """
    ints = sf.integer_primitive()
    rational_width = Fraction(1, 2 * abs(ints[-1]))
    s_lo = _sgn(poly_eval(sf, lo))
    target = min(tol, rational_width)
    checked_rational = False
    while True:
        if not checked_rational and hi - lo <= rational_width:
            checked_rational = True
            r = _rational_root_in(sf, lo, hi)
            if r is not None:
                return r, r, r
        if hi - lo <= target:
            break
        mid = _midpoint(lo, hi)
        s_mid = _sgn(poly_eval(sf, mid))
        if s_mid == 0:
            return mid, mid, mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi, None


def isolate_real_roots(f: RatPoly, interval: Interval, tol: Fraction = DEFAULT_TOL) -> list[RootEnclosure]:
    """Disjoint enclosures of every distinct root of ``f`` in ``interval``, in increasing order."""
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    tol = as_rat(tol)
    sf = squarefree_part(f)
    if sf.degree < 1:
        return []
    B = cauchy_bound(sf)
    lo = interval.lo if interval.lo is not None else -B
    hi = interval.hi if interval.hi is not None else B
    chain = sturm_chain(sf)
    out: list[RootEnclosure] = []
    if lo == hi:
        if poly_eval(sf, lo) == 0 and lo in interval:
            out.append(RootEnclosure(Interval.closed(lo, lo), lo, _multiplicity(f, (lo, lo), lo)))
        return out
    # endpoint roots are reported exactly
    endpoint_roots = []
    if poly_eval(sf, lo) == 0 and interval.lo is not None and interval.lo_closed:
        endpoint_roots.append(lo)
    tail_root = hi if (poly_eval(sf, hi) == 0 and interval.hi is not None and interval.hi_closed) else None
    stack = [(lo, hi)]
    found = []
    while stack:
        a, b = stack.pop()
        k = _open_count(sf, a, b, chain)
        if k == 0:
            continue
        if k == 1:
            # _refine needs a sign change between non-root endpoints
            if poly_eval(sf, a) == 0 or poly_eval(sf, b) == 0:
                mid = _midpoint(a, b)
                if poly_eval(sf, mid) == 0:
                    found.append((mid, mid, mid))
                    continue
                left = _open_count(sf, a, mid, chain)
                stack.append((a, mid) if left else (mid, b))
                continue
            found.append(_refine(sf, a, b, tol))
            continue
        mid = _midpoint(a, b)
        if poly_eval(sf, mid) == 0:
            found.append((mid, mid, mid))
        stack.append((a, mid))
        stack.append((mid, b))
    found.sort(key=lambda t: t[0])
    for r in endpoint_roots:
        out.append(RootEnclosure(Interval.closed(r, r), r, _multiplicity(f, (r, r), r)))
    for a, b, ex in found:
        out.append(RootEnclosure(Interval.closed(a, b), ex, _multiplicity(f, (a, b), ex)))
    if tail_root is not None:
        out.append(RootEnclosure(Interval.closed(tail_root, tail_root), tail_root,
                                 _multiplicity(f, (tail_root, tail_root), tail_root)))
    return out


def smallest_positive_root(f: RatPoly, tol: Fraction = DEFAULT_TOL) -> Optional[RootEnclosure]:
    """Enclosure of the least root of ``f`` in (0, inf), or ``None``.

    The bracket is refined to width <= ``tol``; when the root is rational
    it is detected and returned exactly.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    tol = as_rat(tol)
    sf = squarefree_part(f)
    if sf.degree < 1:
        return None
    g, _ = divide_out_root(sf, 0)
    if g.degree < 1:
        return None
    chain = sturm_chain(g)
    lo, hi = Fraction(0), cauchy_bound(g)
    if _open_count(g, lo, hi, chain) == 0:
        return None

    def exact(r):
        return RootEnclosure(Interval.closed(r, r), r, _multiplicity(f, (r, r), r))

    # invariant: no root in (0, lo], at least one in (lo, hi)
    while _open_count(g, lo, hi, chain) > 1 or poly_eval(g, hi) == 0:
        mid = _midpoint(lo, hi)
        left = _open_count(g, lo, mid, chain)
        if poly_eval(g, mid) == 0 and left == 0:
            return exact(mid)
        if left:
            hi = mid
        else:
            lo = mid
    a, b, ex = _refine(g, lo, hi, tol)
    if ex is not None:
        return exact(ex)
    return RootEnclosure(Interval.closed(a, b), None, _multiplicity(f, (a, b), None))


def _pick_interior(lo: Fraction, hi: Fraction) -> Fraction:
    return _midpoint(lo, hi)


def sign_on_interval(f: RatPoly, interval: Interval) -> SignReport:
    """Certified sign of ``f`` over ``interval``.

    StrictlyPositive means ``f > 0`` at every point of the interval as given
    by its endpoint flags; Nonnegative means ``f >= 0`` with at least one zero.
    Mixed carries a witness point where ``f < 0``.
    """
    if f.is_zero():
        return SignReport(Sign.ZERO, None)
    B = cauchy_bound(f)
    lo = interval.lo if interval.lo is not None else -B - 1
    hi = interval.hi if interval.hi is not None else B + 1
    if lo == hi:
        v = poly_eval(f, lo)
        verdict = {1: Sign.STRICTLY_POSITIVE, -1: Sign.STRICTLY_NEGATIVE, 0: Sign.NONNEGATIVE}[_sgn(v)]
        return SignReport(verdict, lo)
    roots = isolate_real_roots(f, interval)
    # sample one point strictly inside each gap between consecutive roots
    cuts = [lo]
    for r in roots:
        cuts.extend([r.lo, r.hi])
    cuts.append(hi)
    samples = []
    for a, b in zip(cuts[::2], cuts[1::2]):
        if a < b:
            samples.append(_pick_interior(a, b))
    # closed finite endpoints are sampled directly
    if interval.lo is not None and interval.lo_closed:
        samples.append(interval.lo)
    if interval.hi is not None and interval.hi_closed:
        samples.append(interval.hi)
    neg = next((x for x in samples if poly_eval(f, x) < 0), None)
    pos = next((x for x in samples if poly_eval(f, x) > 0), None)
    if not roots:
        if neg is None:
            return SignReport(Sign.STRICTLY_POSITIVE, pos)
        if pos is None:
            return SignReport(Sign.STRICTLY_NEGATIVE, neg)
        raise AssertionError("sign change without a root")  # pragma: no cover
    root_witness = roots[0].exact if roots[0].exact is not None else None
    if neg is None:
        return SignReport(Sign.NONNEGATIVE, root_witness)
    if pos is None:
        return SignReport(Sign.NONPOSITIVE, neg)
    return SignReport(Sign.MIXED, neg)


def nonnegative_on_positive_axis(f: RatPoly) -> bool:
    """``f(t) >= 0`` for every ``t > 0``."""
    return sign_on_interval(f, Interval.positive_axis()).nonnegative
