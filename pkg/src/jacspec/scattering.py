"""Scalar scattering coefficient on the absolutely continuous spectrum.

The fiber spaces of the free operator are one-dimensional, so the scattering
matrix at energy lam inside the band reduces to the unimodular scalar
S = conj(D(lam + i0)) / D(lam + i0); the upper boundary value is used
throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import Coupling
from .chebyshev import u_pair_values
from .errors import DomainError
from .resolvent import Side, _check_point, d_boundary, l_tilde


@dataclass(frozen=True)
class ScatterValue:
    s: complex
    phase: float  # principal value in (-pi, pi]
    lam: float
    coupling: Coupling


@dataclass
class PhaseTable:
    """Scattering values sampled on a grid strictly inside the band."""

    grid: np.ndarray
    s_values: np.ndarray        # complex
    phase: np.ndarray           # principal values
    phase_unwrapped: np.ndarray | None
    coupling: Coupling


def _principal_phase(z: complex) -> float:
    p = math.atan2(z.imag, z.real)
    if p <= -math.pi:
        p = math.pi
    return p


def s_value(c: Coupling, lam: float) -> ScatterValue:
    """Scattering coefficient at a single in-band energy."""
    lam = _check_point(lam)
    if abs(lam) >= 2.0:
        raise DomainError(f"scattering is defined for |lam| < 2, got {lam!r}")
    d = d_boundary(c, lam, Side.UPPER).d
    s = d.conjugate() / d
    return ScatterValue(s=s, phase=_principal_phase(s), lam=lam, coupling=c)


def _s_values_band(c: Coupling, lam):
    """Vectorized conj(D)/D on in-band points."""
    x = np.asarray(lam, dtype=float)
    u, _ = u_pair_values(c.k, x)
    w = np.sqrt(np.clip(1.0 - x * x / 4.0, 0.0, None))
    d = 1.0 + c.beta * l_tilde(c.k, x) + 1j * c.beta * w * u * u
    return np.conj(d) / d


def phase_table(c: Coupling, grid, unwrap: bool = False) -> PhaseTable:
    """Tabulate the scattering coefficient and its phase over a grid.

    Raw principal-value phases are always produced; nearest-branch continued
    phases are added when unwrap is set.
    """
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise DomainError("grid must be a nonempty 1-d array")
    bad = np.abs(g) >= 2.0
    if np.any(bad):
        raise DomainError(
            f"grid point {float(g[bad][0])!r} is outside the open band (-2, 2)"
        )
    s = _s_values_band(c, g)
    raw = np.angle(s)
    unwrapped = np.unwrap(raw) if unwrap else None
    return PhaseTable(grid=g, s_values=s, phase=raw,
                      phase_unwrapped=unwrapped, coupling=c)
