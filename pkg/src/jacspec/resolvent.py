"""Boundary values of the perturbation determinant and the resolvent element.

The scalar D(lam +/- i0) = 1 + beta * (free resolvent element at site k)
controls everything: the perturbed spectral density is the free one divided
by |D|^2, its zeros outside the band are the bound states, and the scattering
coefficient is conj(D)/D.  The real part of the resolvent element is the
principal-value integral i_integral, evaluated here in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .basis import Coupling
from .chebyshev import _check_index, joukowski_a, u_pair_values
from .errors import DomainError


class Side(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class BoundaryValue:
    """Value of D(lam + i0) or D(lam - i0) together with its arguments."""

    d: complex
    side: Side
    lam: float
    coupling: Coupling


def _check_point(lam):
    if not math.isfinite(lam):
        raise DomainError(f"evaluation point must be finite, got {lam!r}")
    return float(lam)


def l_tilde(k: int, lam):
    """-(lam/2) U_k^2 + U_k U_{k-1}; the in-band real part of the resolvent element."""
    _check_index(k)
    x = np.asarray(lam, dtype=float)
    u, um1 = u_pair_values(k, x)
    out = (-x / 2.0 * u + um1) * u
    return float(out) if x.ndim == 0 else out


def i_integral(k: int, lam: float) -> float:
    """Principal-value integral of U_k(t/2)^2 against the free measure over (t - lam).

    Inside the band this equals l_tilde; outside it is (-1)^k a^{k+1} U_k.
    The two branches share the same limit at |lam| = 2, and that common value
    is what is returned there (continuity convention for the endpoint case).
    """
    _check_index(k)
    lam = _check_point(lam)
    if abs(lam) > 2.0:
        u, _ = u_pair_values(k, lam)
        return (-1.0) ** (k % 2) * joukowski_a(lam) ** (k + 1) * u
    return float(l_tilde(k, lam))


def d_boundary(c: Coupling, lam: float, side: Side = Side.UPPER) -> BoundaryValue:
    """Boundary value of the perturbation determinant on the chosen side."""
    lam = _check_point(lam)
    if abs(lam) > 2.0:
        u, _ = u_pair_values(c.k, lam)
        a = joukowski_a(lam)
        d = complex(1.0 + c.beta * (-1.0) ** (c.k % 2) * a ** (c.k + 1) * u, 0.0)
    else:
        u, _ = u_pair_values(c.k, lam)
        lt = float(l_tilde(c.k, lam))
        w = math.sqrt(max(0.0, 1.0 - lam * lam / 4.0))  # == pi * free density
        im = c.beta * w * u * u
        d = complex(1.0 + c.beta * lt, im if side is Side.UPPER else -im)
    return BoundaryValue(d=d, side=side, lam=lam, coupling=c)


def _d_abs_sq_band(c: Coupling, lam):
    """In-band closed form of |D|^2; a polynomial, valid to evaluate anywhere."""
    x = np.asarray(lam, dtype=float)
    u, um1 = u_pair_values(c.k, x)
    return 1.0 + c.beta * (c.beta - x) * u * u + 2.0 * c.beta * u * um1


def d_abs_sq(c: Coupling, lam: float) -> float:
    """|D(lam + i0)|^2 in closed form.

    Outside the band D is real, so the closed form is simply the square of
    the real boundary value there.
    """
    lam = _check_point(lam)
    if abs(lam) > 2.0:
        u, _ = u_pair_values(c.k, lam)
        r = 1.0 + c.beta * (-1.0) ** (c.k % 2) * joukowski_a(lam) ** (c.k + 1) * u
        return r * r
    return float(_d_abs_sq_band(c, lam))
