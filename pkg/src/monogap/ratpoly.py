"""Exact univariate polynomials over the rationals.

Scalars are :class:`fractions.Fraction`; a :class:`RatPoly` stores its
coefficients low-to-high with trailing zeros trimmed, so two polynomials are
equal exactly when their coefficient tuples are.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, lcm, gcd
from typing import Iterable, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: nothing in this package may silently become inexact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RatPoly:
    """Dense polynomial ``sum(coeffs[j] * t**j)`` with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "RatPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "RatPoly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "RatPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    @classmethod
    def parse(cls, text: str) -> "RatPoly":
        """Parse the comma-separated low-to-high format, e.g. ``"0,1,0,1/3"``."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(Fraction(part.strip()) for part in text.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad polynomial text {text!r}: {exc}") from None

    def to_text(self) -> str:
        return ",".join(format_rat(c) for c in self.coeffs) if self.coeffs else "0"

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def lowest_term(self) -> tuple[int, Fraction]:
        """(order, coefficient) of the lowest nonzero term."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j, c
        raise ValueError("zero polynomial has no lowest term")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(j) + other.coeff(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPoly(c * other for c in self.coeffs)
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = RatPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "RatPoly"):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return RatPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] * inv
            if q:
                quot[i - dq] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= q * b
        return RatPoly(quot), RatPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __truediv__(self, c):
        c = as_rat(c)
        return RatPoly(x / c for x in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, t0):
        return poly_eval(self, t0)

    def __repr__(self):
        return f"RatPoly({self.to_text()!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            mag = abs(c)
            body = format_rat(mag) if (mag != 1 or j == 0) else ""
            if body and mono:
                body += "*"
            terms.append(("-" if c < 0 else "+", body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out

    # -- calculus -------------------------------------------------------
    def derivative(self, k: int = 1) -> "RatPoly":
        return poly_derivative(self, k)

    def monic(self) -> "RatPoly":
        return self / self.lc if self.coeffs else self

    def integer_primitive(self) -> list[int]:
        """Coefficients scaled to coprime integers with a positive leading term."""
        if not self.coeffs:
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]


def _lift(x):
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RatPoly([x])
    return NotImplemented


def poly_eval(f: RatPoly, t0) -> Fraction:
    """Horner evaluation at an exact rational point."""
    t0 = as_rat(t0)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * t0 + c
    return acc


def poly_derivative(f: RatPoly, k: int = 1) -> RatPoly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return f
    return RatPoly(
        c * (factorial(j) // factorial(j - k)) for j, c in enumerate(f.coeffs) if j >= k
    )


def taylor_coeff(f: RatPoly, j: int, t0=0) -> Fraction:
    """``f^(j)(t0) / j!``, computed without forming the factorial."""
    t0 = as_rat(t0)
    if t0 == 0:
        return f.coeff(j)
    return sum((comb(m, j) * c * t0 ** (m - j) for m, c in enumerate(f.coeffs) if m >= j),
               Fraction(0))


def taylor_shift(f: RatPoly, t0) -> RatPoly:
    """The polynomial ``t -> f(t + t0)``."""
    return RatPoly(taylor_coeff(f, j, t0) for j in range(len(f.coeffs)))


def compose_affine(f: RatPoly, s, c) -> RatPoly:
    """Return ``g`` with ``g(t) = f(s*t + c)``."""
    s, c = as_rat(s), as_rat(c)
    shifted = taylor_shift(f, c)
    return RatPoly(a * s**j for j, a in enumerate(shifted.coeffs))


def standard_gap_poly(n: int) -> RatPoly:
    """``t + t^3/3 + ... + t^(2n-1)/(2n-1)``, the degree ``2n-1`` gap polynomial."""
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = [Fraction(0)] * (2 * n)
    for j in range(1, n + 1):
        coeffs[2 * j - 1] = Fraction(1, 2 * j - 1)
    return RatPoly(coeffs)


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, (f % g).monic()
    return f.monic()


def squarefree_part(f: RatPoly) -> RatPoly:
    if f.degree <= 0:
        return f.monic()
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime ``(factor, multiplicity)`` pairs.

    ``f == f.lc * prod(factor**m)``; constant factors are omitted.
    """
    if f.degree <= 0:
        return []
    out = []
    a = poly_gcd(f, f.derivative())
    b = f.exact_div(a).monic()
    c = f.derivative().exact_div(a) if not a.is_zero() else f.derivative()
    c = c / f.lc
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a).monic()
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def divide_out_root(f: RatPoly, r) -> tuple[RatPoly, int]:
    """Strip every factor ``(t - r)`` from ``f``; return the cofactor and the count."""
    r = as_rat(r)
    lin = RatPoly([-r, 1])
    m = 0
    while f.degree >= 1 and poly_eval(f, r) == 0:
        f = f.exact_div(lin)
        m += 1
    return f, m


def sum_polys(polys: Sequence[RatPoly]) -> RatPoly:
    acc = RatPoly()
    for p in polys:
        acc = acc + p
    return acc
