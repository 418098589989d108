"""Chebyshev polynomials of the second kind on the spectral band [-2, 2].

Everything downstream is expressed through U_n(lam/2), the orthonormal
polynomials of the free half-line Jacobi operator, and through the conformal
parameter a(lam) that maps the exterior of the band into the punctured unit
interval.  The forward three-term recurrence is the canonical evaluation
route: it is exact at the band edges (integer arithmetic) and is the
dominant-solution direction outside the band, hence stable there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# below this sine magnitude the trigonometric form switches to its limit value
_SIN_GUARD = 1e-8


@dataclass(frozen=True)
class ChebPair:
    """Adjacent pair (U_n(lam/2), U_{n-1}(lam/2)) at a single point.

    The n = 0 pair has u_nm1 = 0 (the index -1 polynomial vanishes
    identically), and on the band the pair satisfies
    u_n**2 + u_nm1**2 - lam*u_n*u_nm1 == 1.
    """

    u_n: float
    u_nm1: float
    n: int
    lam: float


def _check_index(n):
    if int(n) != n or n < 0:
        raise DomainError(f"polynomial index must be a nonnegative integer, got {n!r}")


def u_pair_values(n, lam):
    """Return (U_n(lam/2), U_{n-1}(lam/2)) by forward recurrence.

    Parameters
    ----------
    n : int
        Polynomial degree, n >= 0.
    lam : float or ndarray
        Evaluation point(s); the recurrence is vectorized.
    """
    _check_index(n)
    x = np.asarray(lam, dtype=float)
    u_prev = np.zeros_like(x)  # U_{-1}
    u = np.ones_like(x)        # U_0
    for _ in range(int(n)):
        u, u_prev = x * u - u_prev, u
    if x.ndim == 0:
        return float(u), float(u_prev)
    return u, u_prev


def cheb_u_pair(n: int, lam: float) -> ChebPair:
    """Evaluate the adjacent pair of second-kind Chebyshev values at one point."""
    if not math.isfinite(lam):
        raise DomainError(f"evaluation point must be finite, got {lam!r}")
    u, u_prev = u_pair_values(n, float(lam))
    return ChebPair(u_n=u, u_nm1=u_prev, n=int(n), lam=float(lam))


def u_trig(n: int, lam: float) -> float:
    """Trigonometric evaluation sin((n+1)t)/sin(t) with lam = 2 cos t, |lam| <= 2.

    Used as an independent route against the recurrence.  Negative arguments
    are reduced by parity so the angle is always computed near t = 0, where it
    is obtained from the exact band-edge distance 2 - lam and stays accurate;
    within _SIN_GUARD of the edge the limit value n + 1 is substituted.
    """
    _check_index(n)
    if not math.isfinite(lam) or abs(lam) > 2:
        raise DomainError(f"trigonometric form requires |lam| <= 2, got {lam!r}")
    if lam < 0:
        return (-1.0) ** (n % 2) * u_trig(n, -lam)
    theta = 2.0 * math.asin(math.sqrt((2.0 - lam) / 4.0))
    s = math.sin(theta)
    if abs(s) < _SIN_GUARD:
        return float(n + 1)
    return math.sin((n + 1) * theta) / s


def joukowski_a(lam: float) -> float:
    """Conformal parameter a(lam) for |lam| > 2, with 0 < |a| < 1.

    Computed from the product of the distances to the two band edges, which
    keeps full relative accuracy as lam approaches the band (lam - 2 is exact
    in floating point for lam in [1, 4]).  The sign of a is opposite to lam.
    """
    if not math.isfinite(lam) or abs(lam) <= 2:
        raise DomainError(f"conformal parameter requires |lam| > 2, got {lam!r}")
    s = math.sqrt((lam - 2.0) * (lam + 2.0)) / abs(lam)
    return -(2.0 / lam) / (1.0 + s)


def lambda_from_a(a: float) -> float:
    """Inverse of joukowski_a: lam = -(a**2 + 1)/a for 0 < |a| < 1."""
    if not math.isfinite(a) or a == 0.0 or abs(a) >= 1.0:
        raise DomainError(f"inverse map requires 0 < |a| < 1, got {a!r}")
    return -(a * a + 1.0) / a
