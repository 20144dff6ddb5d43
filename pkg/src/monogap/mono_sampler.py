"""Floating-point search for order violations ``C <= D`` but ``f(C) </= f(D)``.

This is the one place where matrices are handled in floating point.  Its
results only ever raise alarms; nothing here feeds an exact certificate.
Every trial draws from its own generator seeded with ``(seed, trial)``, so
a report depends only on its parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ratpoly import RatPoly
from .realroots import Interval

DEFAULT_TOL = 1e-8
MARGIN = 1e-6
MAX_SHRINK = 60


@dataclass(frozen=True)
class OrderedPair:
    C: np.ndarray
    D: np.ndarray
    interval: Interval
    seed: int
    trial: int


@dataclass(frozen=True)
class FalsificationReport:
    f: RatPoly
    n: int
    interval: Interval
    trials: int  # trials actually run
    seed: int
    tol: float
    counterexample: Optional[tuple[np.ndarray, np.ndarray, float]] = None
    trial: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def _bounds(I: Interval) -> tuple[float, float]:
    if not I.bounded:
        raise ValueError("sampling needs a bounded interval")
    lo, hi = float(I.lo), float(I.hi)
    if hi <= lo:
        raise ValueError("sampling needs a nondegenerate interval")
    m = min(MARGIN, (hi - lo) / 4)
    return lo + m, hi - m


def _random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _symmetrize(X: np.ndarray) -> np.ndarray:
    return (X + X.T) / 2


def sample_ordered_pair(n: int, I: Interval, rng: np.random.Generator,
                        seed: int = 0, trial: int = 0) -> OrderedPair:
    """Random ``C <= D`` with both spectra inside ``I`` (kept ``MARGIN`` from the ends)."""
    lo, hi = _bounds(I)
    spec = np.sort(rng.uniform(lo, hi, size=n))
    Q = _random_orthogonal(n, rng)
    C = _symmetrize(Q @ np.diag(spec) @ Q.T)
    G = rng.standard_normal((n, n))
    P = G.T @ G
    room = hi - spec[-1]
    # log-uniform fraction of the available headroom
    scale = room * math.exp(rng.uniform(math.log(1e-4), 0.0)) / max(np.linalg.eigvalsh(P)[-1], 1e-300)
    for _ in range(MAX_SHRINK):
        D = _symmetrize(C + scale * P)
        ev = np.linalg.eigvalsh(D)
        if ev[0] >= lo - 1e-12 and ev[-1] <= hi + 1e-12:
            return OrderedPair(C, D, I, seed, trial)
        scale /= 2
    raise RuntimeError("could not fit D inside the interval")


def matfun_poly(f: RatPoly, X: np.ndarray) -> np.ndarray:
    """``f(X)`` by Horner's rule, symmetrized."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    acc = np.zeros((n, n))
    eye = np.eye(n)
    for c in reversed(f.coeffs):
        acc = acc @ X + float(c) * eye
    return _symmetrize(acc)


def matfun_eig(f: RatPoly, X: np.ndarray) -> np.ndarray:
    """``f(X)`` through the eigendecomposition; an independent route for cross-checks."""
    w, V = np.linalg.eigh(np.asarray(X, dtype=float))
    vals = np.array([_eval_float(f, x) for x in w])
    return _symmetrize(V @ np.diag(vals) @ V.T)


def _eval_float(f: RatPoly, x: float) -> float:
    acc = 0.0
    for c in reversed(f.coeffs):
        acc = acc * x + float(c)
    return acc


def pair_gap(f: RatPoly, C: np.ndarray, D: np.ndarray) -> float:
    """Smallest eigenvalue of ``f(D) - f(C)``."""
    return float(np.linalg.eigvalsh(matfun_poly(f, D) - matfun_poly(f, C))[0])


def falsify_monotone(f: RatPoly, n: int, I: Interval, trials: int = 10**4,
                     seed: int = 0, tol: float = DEFAULT_TOL) -> FalsificationReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        pair = sample_ordered_pair(n, I, rng, seed, trial)
        lam = pair_gap(f, pair.C, pair.D)
        if lam < -tol:
            return FalsificationReport(f, n, I, trial + 1, seed, tol, (pair.C, pair.D, lam), trial)
    return FalsificationReport(f, n, I, trials, seed, tol)
