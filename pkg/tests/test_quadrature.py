import math

import numpy as np
import pytest

from jacspec.errors import ConvergenceError, DomainError
from jacspec.quadrature import (DEFAULT_QUADRATURE, QuadratureConfig,
                                adaptive_quadrature, kronrod_panel)


def test_polynomial_exact():
    # the embedded Gauss rule is exact to degree 13, Kronrod to 22
    val, err = kronrod_panel(lambda x: x ** 10, -1.0, 1.0)
    assert val == pytest.approx(2 / 11, rel=1e-14)
    assert err <= 1e-14


def test_sin_mass():
    res = adaptive_quadrature(np.sin, 0.0, math.pi)
    assert res.value == pytest.approx(2.0, abs=1e-12)
    assert res.error <= 1e-10


def test_tolerance_respected():
    cfg = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-12, max_depth=50)
    res = adaptive_quadrature(lambda x: np.exp(-x * x), -5.0, 5.0, cfg)
    assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-11)


def test_needle_requires_subdivision():
    res = adaptive_quadrature(lambda x: 1.0 / (1e-4 + x * x), -1.0, 1.0)
    exact = 2.0 / 1e-2 * math.atan(1.0 / 1e-2)
    assert res.value == pytest.approx(exact, rel=1e-9)
    assert res.n_panels > 1


def test_nonconvergence_carries_partial():
    cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-14, max_depth=2)
    with pytest.raises(ConvergenceError) as exc:
        adaptive_quadrature(lambda x: np.sqrt(np.abs(x)), -1.0, 1.0, cfg)
    assert exc.value.partial == pytest.approx(4.0 / 3.0, rel=1e-2)
    assert exc.value.error > 0


def test_deterministic():
    f = lambda x: np.cos(37 * x) / (1.1 + np.sin(x))  # noqa: E731
    r1 = adaptive_quadrature(f, 0.0, 2.0)
    r2 = adaptive_quadrature(f, 0.0, 2.0)
    assert r1.value == r2.value
    assert r1.n_panels == r2.n_panels


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_depth=61)
    with pytest.raises(DomainError):
        adaptive_quadrature(np.sin, 1.0, 0.0)
    assert DEFAULT_QUADRATURE.max_depth == 40
