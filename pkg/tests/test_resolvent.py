import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacspec.basis import Coupling
from jacspec.chebyshev import joukowski_a
from jacspec.errors import DomainError
from jacspec.resolvent import Side, d_abs_sq, d_boundary, i_integral, l_tilde


def test_exterior_anchors():
    assert i_integral(0, 2.5) == pytest.approx(-0.5, abs=1e-15)
    # recursion seed: I1 = lam + lam^2 * I0; geometric form a(1 + a^2)
    assert i_integral(1, 2.5) == pytest.approx(-0.625, abs=1e-15)
    a = joukowski_a(2.5)
    assert i_integral(1, 2.5) == pytest.approx(a * (1 + a * a), abs=1e-15)


def test_interior_anchors():
    assert i_integral(0, 0.0) == 0.0
    assert i_integral(1, 1.0) == pytest.approx(0.5, abs=1e-15)


def test_l_tilde_hand_forms():
    for lam in (-1.8, -0.3, 0.0, 0.9, 2.0):
        assert l_tilde(0, lam) == pytest.approx(-lam / 2, abs=1e-15)
        assert l_tilde(1, lam) == pytest.approx(lam - lam ** 3 / 2, rel=1e-13, abs=1e-14)
    assert l_tilde(2, 1.5) == i_integral(2, 1.5)


def test_branches_meet_at_band_edges():
    # the exterior branch closes the square-root gap ~ (k+1)^2 sqrt(offset)
    for k in range(8):
        for edge in (2.0, -2.0):
            inside = i_integral(k, edge)
            assert inside == l_tilde(k, edge)  # endpoint convention
            gap = abs(inside - i_integral(k, edge * (1 + 1e-13)))
            assert gap <= 10 * (k + 1) ** 2 * math.sqrt(4e-13)


def test_exterior_geometric_sum():
    # outside the band the integral telescopes to a + a^3 + ... + a^(2k+1)
    rng = np.random.default_rng(29)
    for _ in range(50):
        lam = float(rng.uniform(2.001, 7.0) * rng.choice([-1.0, 1.0]))
        a = joukowski_a(lam)
        for k in range(9):
            geometric = sum(a ** (2 * j + 1) for j in range(k + 1))
            assert i_integral(k, lam) == pytest.approx(geometric, rel=1e-12, abs=1e-13)


def test_exterior_recursion():
    rng = np.random.default_rng(5)
    for k in range(2, 11):
        for lam in rng.uniform(2.05, 6.0, 15) * rng.choice([-1.0, 1.0], 15):
            lam = float(lam)
            a = joukowski_a(lam)
            resid = (i_integral(k, lam) - lam - 2 * a
                     - (lam * lam - 2) * i_integral(k - 1, lam) + i_integral(k - 2, lam))
            assert abs(resid) <= 1e-9


def test_d_boundary_unperturbed():
    for k in (0, 3):
        d = d_boundary(Coupling(k, 0.0), 1.234).d
        assert d == 1.0 + 0.0j


def test_d_boundary_bound_state_zero():
    assert abs(d_boundary(Coupling(0, 2.0), 2.5).d) <= 1e-15


def test_d_boundary_invisible_at_u_zero():
    # U_1 vanishes at lam = 0, so the site-1 perturbation drops out
    assert d_boundary(Coupling(1, 0.4), 0.0).d == 1.0 + 0.0j


def test_d_boundary_conjugate_sides():
    rng = np.random.default_rng(8)
    for _ in range(50):
        c = Coupling(int(rng.integers(0, 8)), float(rng.uniform(-3, 3)))
        lam = float(rng.uniform(-2, 2))
        up = d_boundary(c, lam, Side.UPPER).d
        lo = d_boundary(c, lam, Side.LOWER).d
        assert up == lo.conjugate()


def test_d_boundary_real_outside():
    rng = np.random.default_rng(9)
    for _ in range(50):
        c = Coupling(int(rng.integers(0, 8)), float(rng.uniform(-3, 3)))
        lam = float(rng.uniform(2.0001, 6.0) * rng.choice([-1.0, 1.0]))
        assert d_boundary(c, lam).d.imag == 0.0


def test_d_abs_sq_hand_forms():
    # k = 0 inside: A = 1, B = 0
    for beta in (-1.5, 0.25, 2.0):
        for lam in (-1.9, 0.0, 1.1):
            assert d_abs_sq(Coupling(0, beta), lam) == pytest.approx(
                1 + beta * beta - beta * lam, rel=1e-14, abs=1e-14)
    assert d_abs_sq(Coupling(1, 1.6), 2.5) == pytest.approx(0.0, abs=1e-14)
    # U_2(lam/2) = lam^2 - 1 vanishes at lam = 1: perturbation invisible
    assert d_abs_sq(Coupling(2, 0.3), 1.0) == pytest.approx(1.0, abs=1e-14)
    for lam in (-1.2, 0.7):
        assert d_abs_sq(Coupling(3, 0.0), lam) == 1.0


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 10), st.floats(-3, 3, allow_nan=False),
       st.floats(-2, 2, allow_nan=False))
def test_expansion_identity_inside(k, beta, lam):
    c = Coupling(k, beta)
    d = d_boundary(c, lam, Side.UPPER).d
    assert abs(abs(d) ** 2 - d_abs_sq(c, lam)) <= 1e-11


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10), st.floats(-3, 3, allow_nan=False),
       st.floats(2.0001, 5, allow_nan=False), st.booleans())
def test_expansion_identity_outside(k, beta, lam, neg):
    lam = -lam if neg else lam
    c = Coupling(k, beta)
    d = d_boundary(c, lam, Side.UPPER).d
    assert abs(abs(d) ** 2 - d_abs_sq(c, lam)) <= 1e-11


def test_positive_inside_band():
    rng = np.random.default_rng(17)
    grid = np.linspace(-2, 2, 2002)[1:-1]
    for _ in range(200):
        c = Coupling(int(rng.integers(0, 11)), float(rng.uniform(-3, 3)))
        vals = [d_abs_sq(c, float(x)) for x in grid]
        assert min(vals) > 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        i_integral(2, float("nan"))
    with pytest.raises(DomainError):
        i_integral(-1, 0.5)
