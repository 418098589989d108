"""Brute-force ground truth, independent of the closed forms.

Two oracles are provided: direct principal-value quadrature of the resolvent
integral (built only from the Chebyshev recurrence and the free density, no
shared code with the closed-form branch logic), and dense spectral data of
N x N truncations of the perturbed Jacobi matrix.  Truncation eigenvalues
come from LAPACK's symmetric tridiagonal solver on the (diagonal,
off-diagonal) pair; the spectral weights, squares of the first eigenvector
components, are recovered without ever forming eigenvector matrices: in-band
eigenvalues use the normalized-polynomial identity weight = 1/sum_n p_n^2,
outliers use inverse iteration with tridiagonal solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal, solve_banded

from .basis import Coupling, Coupling2D
from .chebyshev import u_pair_values
from .errors import DomainError, NumericalError
from .measure import mu0_density, mu12_density, muk_density
from .quadrature import (DEFAULT_QUADRATURE, QuadratureConfig,
                         adaptive_quadrature, kronrod_panel)

# difference-quotient guard for the subtracted PV integrand
_PV_GUARD = 1e-9
_PV_DIFF_STEP = 1e-5


@dataclass
class TruncationResult:
    """Eigenvalues and first-component spectral weights of a truncation."""

    n_dim: int
    eigenvalues: np.ndarray  # ascending
    weights: np.ndarray      # squared first components, sum to 1
    coupling: Coupling | Coupling2D


def _diagonal(coupling, n_dim: int) -> np.ndarray:
    d = np.zeros(n_dim)
    if isinstance(coupling, Coupling):
        if n_dim < 2 * coupling.k + 4:
            raise DomainError(
                f"truncation must cover the perturbation: need n_dim >= {2 * coupling.k + 4}"
            )
        d[coupling.k] = coupling.beta
    elif isinstance(coupling, Coupling2D):
        if n_dim < 6:
            raise DomainError("rank-two truncation needs n_dim >= 6")
        d[0] = coupling.beta1
        d[1] = coupling.beta2
    else:
        raise DomainError(f"unsupported coupling type {type(coupling).__name__}")
    return d


def _weights_in_band(d: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """1 / sum_n p_n(lam)^2 for eigenvalues inside the band (stable there)."""
    if lam.size == 0:
        return np.zeros(0)
    p_prev = np.ones_like(lam)
    total = p_prev * p_prev
    p = lam - d[0]
    total += p * p
    for j in range(1, d.size - 1):
        p, p_prev = (lam - d[j]) * p - p_prev, p
        total += p * p
    return 1.0 / total


def _first_component_sq(d: np.ndarray, lam: float) -> float:
    """Squared first eigenvector component via inverse iteration."""
    n = d.size
    shift = lam
    v = np.zeros(n)
    v[0] = 1.0
    for _ in range(3):
        w = None
        for _attempt in range(4):
            ab = np.zeros((3, n))
            ab[0, 1:] = 1.0
            ab[1, :] = d - shift
            ab[2, :-1] = 1.0
            try:
                w = solve_banded((1, 1), ab, v)
                break
            except LinAlgError:
                # exactly singular shift: nudge off the eigenvalue
                shift += 1e-13 * (1.0 + abs(shift))
        if w is None:
            raise NumericalError("inverse iteration could not factor the shifted matrix")
        nrm = float(np.linalg.norm(w))
        if not math.isfinite(nrm) or nrm == 0.0:
            raise NumericalError("inverse iteration produced a degenerate vector")
        v = w / nrm
    return float(v[0] * v[0])


def truncated_spectrum(coupling, n_dim: int) -> TruncationResult:
    """Full eigen-data of the n_dim x n_dim truncated Jacobi matrix."""
    if int(n_dim) != n_dim or n_dim < 2:
        raise DomainError("n_dim must be an integer >= 2")
    n_dim = int(n_dim)
    d = _diagonal(coupling, n_dim)
    try:
        eigs = eigvalsh_tridiagonal(d, np.ones(n_dim - 1))
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc
    eigs = np.sort(eigs)
    weights = np.zeros(n_dim)
    in_band = np.abs(eigs) <= 2.0
    weights[in_band] = _weights_in_band(d, eigs[in_band])
    for i in np.nonzero(~in_band)[0]:
        weights[i] = _first_component_sq(d, float(eigs[i]))
    return TruncationResult(n_dim=n_dim, eigenvalues=eigs, weights=weights,
                            coupling=coupling)


def pv_quadrature(k: int, lam: float,
                  config: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Principal-value integral of U_k(t/2)^2 d(free measure)(t) / (t - lam).

    Outside the band the integrand is regular and integrated directly; inside,
    the singularity is subtracted and its principal value added back in closed
    form, log((2 - lam)/(2 + lam)).  Both cases integrate in the theta
    variable, where the edge square roots are analytic.
    """
    if int(k) != k or k < 0:
        raise DomainError("k must be a nonnegative integer")
    if not math.isfinite(lam):
        raise DomainError(f"lam must be finite, got {lam!r}")
    if abs(lam) == 2.0:
        raise DomainError("the principal-value integral is an endpoint case at |lam| = 2")

    def f(t):
        u, _ = u_pair_values(k, t)
        return u * u * mu0_density(t)

    if abs(lam) > 2.0:

        def integrand(theta):
            t = 2.0 * np.cos(theta)
            return f(t) * 2.0 * np.sin(theta) / (t - lam)

        return adaptive_quadrature(integrand, 0.0, math.pi, config).value

    f_lam = float(f(np.asarray(lam)))
    h = _PV_DIFF_STEP
    slope = (float(f(np.asarray(lam + h))) - float(f(np.asarray(lam - h)))) / (2.0 * h)

    def integrand(theta):
        t = 2.0 * np.cos(theta)
        den = t - lam
        quot = np.where(np.abs(den) < _PV_GUARD, slope,
                        (f(t) - f_lam) / np.where(np.abs(den) < _PV_GUARD, 1.0, den))
        return quot * 2.0 * np.sin(theta)

    smooth = adaptive_quadrature(integrand, 0.0, math.pi, config).value
    return smooth + f_lam * math.log((2.0 - lam) / (2.0 + lam))


def _model_density(coupling):
    if isinstance(coupling, Coupling):
        return lambda x: muk_density(coupling, x)
    if isinstance(coupling, Coupling2D):
        return lambda x: mu12_density(coupling, x)
    raise DomainError(f"unsupported coupling type {type(coupling).__name__}")


def empirical_cdf_distance(coupling, n_dim: int,
                           config: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Sup distance between the truncation CDF and the closed-form density CDF.

    Outlier (bound-state) eigenvalues are excluded from the empirical side,
    so both sides carry the same total mass, namely the absolutely continuous
    part.  The model CDF is accumulated over the gaps between consecutive
    eigenvalues with one Kronrod panel per gap in the theta variable; panels
    whose error estimate is not negligible are refined adaptively.
    """
    res = truncated_spectrum(coupling, n_dim)
    in_band = np.abs(res.eigenvalues) < 2.0
    eigs = res.eigenvalues[in_band]
    if eigs.size == 0:
        raise DomainError("no in-band eigenvalues to compare")
    empirical = np.cumsum(res.weights[in_band])

    density = _model_density(coupling)

    def integrand(theta):
        return density(2.0 * np.cos(theta)) * 2.0 * np.sin(theta)

    # theta decreases as lam increases; panel i covers (lam_{i-1}, lam_i]
    thetas = np.arccos(np.clip(eigs / 2.0, -1.0, 1.0))
    uppers = np.concatenate([[math.pi], thetas[:-1]])
    vals = np.zeros(eigs.size)
    for i in range(eigs.size):
        v, err = kronrod_panel(integrand, thetas[i], uppers[i])
        if err > 1e-12:
            v = adaptive_quadrature(integrand, thetas[i], uppers[i], config).value
        vals[i] = v
    model = np.cumsum(vals)
    return float(np.max(np.abs(empirical - model)))
