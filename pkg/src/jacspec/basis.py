"""Orthonormal polynomials of the diagonally perturbed half-line Jacobi matrix.

Site indices are 0-based throughout: the rank-one coupling (k, beta) adds
beta to the k-th diagonal entry, and the rank-two coupling (beta1, beta2)
sits at sites 0 and 1.  The single-site polynomials come in two independent
routes, the defining three-term recurrence and an explicit expansion over the
free Chebyshev polynomials, which cross-validate each other in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import _check_index
from .errors import DomainError


@dataclass(frozen=True)
class Coupling:
    """Rank-one perturbation: strength beta at site k."""

    k: int
    beta: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"site index k must be a nonnegative integer, got {self.k!r}")
        if not math.isfinite(self.beta):
            raise DomainError(f"coupling beta must be finite, got {self.beta!r}")


@dataclass(frozen=True)
class Coupling2D:
    """Rank-two perturbation: strengths beta1, beta2 at sites 0 and 1."""

    beta1: float
    beta2: float

    def __post_init__(self):
        if not (math.isfinite(self.beta1) and math.isfinite(self.beta2)):
            raise DomainError("rank-two couplings must be finite")


def _prepare(lam):
    x = np.asarray(lam, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("evaluation point must be finite")
    return x


def _finish(x, val):
    return float(val) if x.ndim == 0 else val


def phi_recurrence(c: Coupling, n: int, lam):
    """Perturbed polynomial value by the defining recurrence; vectorized in lam."""
    _check_index(n)
    x = _prepare(lam)
    p_prev = np.ones_like(x)  # index 0
    if n == 0:
        return _finish(x, p_prev)
    p = x - (c.beta if c.k == 0 else 0.0)  # index 1
    for m in range(1, int(n)):
        diag = c.beta if m == c.k else 0.0
        p, p_prev = (x - diag) * p - p_prev, p
    return _finish(x, p)


def phi_closed_form(c: Coupling, n: int, lam):
    """Perturbed polynomial assembled from its expansion over the free U_j.

    Below the perturbation site the polynomial equals U_n unchanged; past it,
    beta times every second lower-degree U is subtracted, the number of
    subtracted terms growing one per degree until it saturates at k + 1.
    """
    _check_index(n)
    x = _prepare(lam)
    n = int(n)
    # forward pass storing U_0 .. U_n
    us = [np.ones_like(x)]
    if n >= 1:
        us.append(x.copy())
    for _ in range(2, n + 1):
        us.append(x * us[-1] - us[-2])
    if n <= c.k:
        return _finish(x, us[n])
    terms = min(n - c.k, c.k + 1)
    acc = np.zeros_like(x)
    for j in range(terms):
        acc = acc + us[n - 1 - 2 * j]
    return _finish(x, us[n] - c.beta * acc)


def phi2d_recurrence(c2: Coupling2D, n: int, t):
    """Rank-two perturbed polynomial by its three-term recurrence; vectorized in t."""
    _check_index(n)
    x = _prepare(t)
    p_prev = np.ones_like(x)  # index 0
    if n == 0:
        return _finish(x, p_prev)
    p = x - c2.beta1  # index 1
    for m in range(1, int(n)):
        diag = c2.beta2 if m == 1 else 0.0
        p, p_prev = (x - diag) * p - p_prev, p
    return _finish(x, p)
