"""Densities of the orthogonality measures and their integrals.

All absolutely continuous parts live on the band [-2, 2].  Integrals over the
band are performed after the substitution lam = 2 cos(theta), which turns the
square-root edge factor of every density into sin^2(theta) and removes the
endpoint derivative singularity; at a critical coupling, where the density
denominator vanishes linearly at a band edge, the substituted integrand is
still analytic, so one quadrature path covers every admissible coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import Coupling, Coupling2D, phi_closed_form, phi_recurrence
from .chebyshev import u_pair_values
from .errors import DomainError
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, QuadResult, adaptive_quadrature
from .resolvent import _d_abs_sq_band

_KINDS = ("free", "rank-one", "rank-two", "rho0k", "rhok")


@dataclass
class DensityTable:
    """Sampled density on a grid inside the band, plus its total mass."""

    grid: np.ndarray
    values: np.ndarray
    total_mass: float
    descriptor: dict
    metadata: dict = field(default_factory=dict)


def mu0_density(lam):
    """Free spectral density (1/pi) sqrt(1 - lam^2/4) on the band, 0 outside."""
    x = np.asarray(lam, dtype=float)
    inside = np.abs(x) <= 2.0
    val = np.where(inside, np.sqrt(np.clip(1.0 - x * x / 4.0, 0.0, None)) / math.pi, 0.0)
    return float(val) if x.ndim == 0 else val


def muk_density(c: Coupling, lam):
    """Density of the rank-one perturbed measure: free density over |D|^2.

    Returns 0 outside the open band, including the endpoints themselves (at a
    critical coupling the closed form is 0/0 there; its limit from inside is
    an integrable edge singularity, reported as 0 at the endpoint).
    """
    x = np.asarray(lam, dtype=float)
    inside = np.abs(x) < 2.0
    denom = np.where(inside, _d_abs_sq_band(c, x), 1.0)
    val = np.where(inside, mu0_density(x) / denom, 0.0)
    return float(val) if x.ndim == 0 else val


def _q_rank_two(c2: Coupling2D, t):
    b1, b2 = c2.beta1, c2.beta2
    x = np.asarray(t, dtype=float)
    return (
        b1 * b1
        + (1.0 - b1 * b2) ** 2
        + x * (2.0 * b2 - b1 * (1.0 + b1 * b2 + 2.0 * b2 * b2))
        + x * x * b2 * (b2 + 2.0 * b1)
        - x ** 3 * b2
    )


def mu12_density(c2: Coupling2D, t):
    """Density of the rank-two perturbed measure; 0 outside the open band.

    Raises DomainError when the cubic denominator is nonpositive at a
    requested in-band point: there the closed form no longer describes the
    whole measure (point or singular spectrum territory).
    """
    x = np.asarray(t, dtype=float)
    inside = np.abs(x) < 2.0
    q = _q_rank_two(c2, x)
    bad = inside & (q <= 0.0)
    if np.any(bad):
        t_bad = float(np.asarray(x)[bad][0]) if x.ndim else float(x)
        raise DomainError(
            f"rank-two density denominator vanishes at t = {t_bad!r}; "
            "closed form invalid for this coupling"
        )
    val = np.where(inside, mu0_density(x) / np.where(inside, q, 1.0), 0.0)
    return float(val) if x.ndim == 0 else val


def rho_densities(c: Coupling, lam):
    """Pair of derived densities (|U_k|^2 * free, |U_k|^2 * perturbed)."""
    x = np.asarray(lam, dtype=float)
    u, _ = u_pair_values(c.k, x)
    usq = u * u
    r0 = usq * mu0_density(x)
    rk = usq * muk_density(c, x)
    if x.ndim == 0:
        return float(r0), float(rk)
    return r0, rk


def _density_fn(descriptor: str, params):
    """Vectorized lam -> density callable for a named measure."""
    if descriptor == "free":
        return mu0_density
    if descriptor == "rank-one":
        if not isinstance(params, Coupling):
            raise DomainError("rank-one measure needs a Coupling")
        return lambda x: muk_density(params, x)
    if descriptor == "rank-two":
        if not isinstance(params, Coupling2D):
            raise DomainError("rank-two measure needs a Coupling2D")
        return lambda x: mu12_density(params, x)
    if descriptor == "rho0k":
        if not isinstance(params, Coupling):
            raise DomainError("rho0k measure needs a Coupling (beta unused)")
        return lambda x: rho_densities(params, x)[0]
    if descriptor == "rhok":
        if not isinstance(params, Coupling):
            raise DomainError("rhok measure needs a Coupling")
        return lambda x: rho_densities(params, x)[1]
    raise DomainError(f"unknown measure descriptor {descriptor!r}; expected one of {_KINDS}")


def band_integral(fn, config: QuadratureConfig = DEFAULT_QUADRATURE) -> QuadResult:
    """Integrate a vectorized density-like function over the band in theta."""

    def integrand(theta):
        return fn(2.0 * np.cos(theta)) * 2.0 * np.sin(theta)

    return adaptive_quadrature(integrand, 0.0, math.pi, config)


def mass_quadrature(descriptor: str, params=None,
                    config: QuadratureConfig = DEFAULT_QUADRATURE) -> QuadResult:
    """Total mass of the named density with its quadrature error estimate."""
    return band_integral(_density_fn(descriptor, params), config)


def total_mass(descriptor: str, params=None,
               config: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Integral of the named density over the band."""
    return mass_quadrature(descriptor, params, config).value


def orthonormality_defect(c: Coupling, m: int, n: int,
                          config: QuadratureConfig = DEFAULT_QUADRATURE,
                          route: str = "recurrence") -> float:
    """|<phi_m, phi_n> - delta_mn| under the rank-one perturbed measure.

    Only valid at or below the critical coupling, where the absolutely
    continuous density is the whole orthogonality measure; above it the
    missing bound-state atom would make the defect meaningless.
    """
    if abs(c.beta) > 1.0 / (c.k + 1):
        raise DomainError(
            f"|beta| = {abs(c.beta)!r} exceeds the critical coupling "
            f"{1.0 / (c.k + 1)!r}; the a.c. density alone is not the full measure"
        )
    if route == "recurrence":
        phi = phi_recurrence
    elif route == "closed":
        phi = phi_closed_form
    else:
        raise DomainError(f"unknown basis route {route!r}")

    def integrand(theta):
        t = 2.0 * np.cos(theta)
        return phi(c, m, t) * phi(c, n, t) * muk_density(c, t) * 2.0 * np.sin(theta)

    val = adaptive_quadrature(integrand, 0.0, math.pi, config).value
    return abs(val - (1.0 if m == n else 0.0))


def density_table(descriptor: str, params, grid,
                  config: QuadratureConfig = DEFAULT_QUADRATURE) -> DensityTable:
    """Sample the named density on a strictly increasing grid inside [-2, 2]."""
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise DomainError("grid must be a 1-d array with at least two points")
    if np.any(np.diff(g) <= 0):
        raise DomainError("grid must be strictly increasing")
    if g[0] < -2.0 or g[-1] > 2.0:
        raise DomainError("grid must be contained in [-2, 2]")
    fn = _density_fn(descriptor, params)
    values = fn(g)
    mass = mass_quadrature(descriptor, params, config)

    desc: dict = {"kind": descriptor}
    meta: dict = {"mass_error_estimate": mass.error}
    if isinstance(params, Coupling):
        desc.update(k=params.k, beta=params.beta)
        crit = 1.0 / (params.k + 1)
        if abs(abs(params.beta) - crit) <= 1e-15:
            meta["edge_note"] = (
                "critical coupling: the density has an integrable inverse-square-root "
                "edge; endpoint values are reported as 0"
            )
    elif isinstance(params, Coupling2D):
        desc.update(beta1=params.beta1, beta2=params.beta2)
    if abs(g[0]) == 2.0 or abs(g[-1]) == 2.0:
        meta["boundary_points"] = True
    return DensityTable(grid=g, values=np.asarray(values, dtype=float),
                        total_mass=mass.value, descriptor=desc, metadata=meta)
