import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacspec.chebyshev import (cheb_u_pair, joukowski_a, lambda_from_a,
                               u_pair_values, u_trig)
from jacspec.errors import DomainError


def test_base_case():
    p = cheb_u_pair(0, 1.3)
    assert p.u_n == 1.0
    assert p.u_nm1 == 0.0
    assert p.n == 0


@pytest.mark.parametrize("k", range(0, 12))
def test_band_edge_values(k):
    assert cheb_u_pair(k, 2.0).u_n == k + 1
    assert cheb_u_pair(k, -2.0).u_n == (-1) ** k * (k + 1)


def test_degree_two_hand_expansion():
    # U_2(lam/2) = lam^2 - 1
    assert cheb_u_pair(2, 2.5).u_n == pytest.approx(5.25, abs=1e-14)


def test_vectorized_matches_scalar():
    lams = np.linspace(-2.2, 2.2, 11)
    u, um1 = u_pair_values(7, lams)
    for i, lam in enumerate(lams):
        p = cheb_u_pair(7, float(lam))
        assert u[i] == p.u_n
        assert um1[i] == p.u_nm1


@settings(max_examples=300)
@given(st.integers(0, 50), st.floats(-2.0, 2.0, allow_nan=False))
def test_pair_identity_on_band(k, lam):
    u, um1 = u_pair_values(k, lam)
    assert abs(u * u + um1 * um1 - lam * u * um1 - 1.0) <= 1e-11


@settings(max_examples=200)
@given(st.integers(0, 50), st.floats(-2.0, 2.0, allow_nan=False))
def test_band_bound(k, lam):
    u, _ = u_pair_values(k, lam)
    assert abs(u) <= k + 1 + 1e-9


def test_recurrence_consistency_to_200():
    # absolute residual scale n+1 on the band, relative scale off it where
    # the values grow exponentially
    rng = np.random.default_rng(3)
    for lam in np.concatenate([rng.uniform(-2, 2, 20), rng.uniform(2, 5, 5),
                               -rng.uniform(2, 5, 5)]):
        seq = [1.0, float(lam)]
        for _ in range(201):
            seq.append(lam * seq[-1] - seq[-2])
        for n in range(1, 201):
            resid = abs(lam * seq[n] - seq[n + 1] - seq[n - 1])
            if abs(lam) <= 2:
                assert resid <= 1e-10 * (n + 1)
            else:
                assert resid <= 1e-12 * max(1.0, abs(lam * seq[n]))


def test_trig_agrees_with_recurrence():
    rng = np.random.default_rng(11)
    lams = np.concatenate([rng.uniform(-2, 2, 1000),
                           [2.0, -2.0, 0.0, 2 - 1e-8, -2 + 1e-8]])
    for n in (0, 1, 2, 5, 20, 100, 200):
        for lam in lams:
            u, _ = u_pair_values(n, float(lam))
            assert abs(u_trig(n, float(lam)) - u) <= 1e-12 * (n + 1)


def test_joukowski_hand_values():
    assert joukowski_a(2.5) == pytest.approx(-0.5, abs=1e-15)
    assert joukowski_a(-2.5) == pytest.approx(0.5, abs=1e-15)
    # confirmed by the inverse map: lambda_from_a(a) == 10 to 1e-14 relative
    a10 = joukowski_a(10.0)
    assert a10 == pytest.approx(-0.10102051443364380, abs=1e-15)
    assert lambda_from_a(a10) == pytest.approx(10.0, rel=1e-14)


def test_lambda_from_a_hand_values():
    assert lambda_from_a(-0.5) == 2.5
    assert lambda_from_a(0.5) == -2.5


def test_lambda_from_a_boundary_limit():
    # a -> -1 from inside gives lam -> 2 from above
    prev = np.inf
    for eps in (1e-2, 1e-4, 1e-6, 1e-8):
        lam = lambda_from_a(-1.0 + eps)
        assert 2.0 < lam < prev
        prev = lam


def test_joukowski_sign_and_range():
    for lam in (2.0000001, 3.0, 50.0, -2.5, -1e6):
        a = joukowski_a(lam)
        assert 0 < abs(a) < 1
        assert math.copysign(1.0, a) == -math.copysign(1.0, lam)


def test_roundtrip_seeded():
    # the documented seeded draw; conditioning degrades like eps/(1 - |a|)
    # towards |a| = 1 and this seed stays clear of the rim
    rng = np.random.default_rng(42)
    for a in rng.uniform(-1.0, 1.0, 1000):
        if abs(a) < 1e-8:
            continue
        assert abs(joukowski_a(lambda_from_a(float(a))) - float(a)) <= 1e-13


def test_roundtrip_rim_conditioning():
    # near the rim the attainable accuracy scales with the map conditioning
    for one_minus in (1e-2, 1e-3, 1e-4, 1e-5):
        a = -(1.0 - one_minus)
        err = abs(joukowski_a(lambda_from_a(a)) - a)
        assert err <= 50 * np.finfo(float).eps / one_minus


@settings(max_examples=300)
@given(st.floats(-0.995, 0.995, allow_nan=False).filter(lambda a: abs(a) > 1e-6))
def test_roundtrip_property(a):
    assert abs(joukowski_a(lambda_from_a(a)) - a) <= 1e-13


@pytest.mark.parametrize("bad", [2.0, -2.0, 1.0, 0.0, float("nan"), float("inf")])
def test_joukowski_domain(bad):
    with pytest.raises(DomainError):
        joukowski_a(bad)


@pytest.mark.parametrize("bad", [0.0, 1.0, -1.0, 1.5, float("nan")])
def test_lambda_from_a_domain(bad):
    with pytest.raises(DomainError):
        lambda_from_a(bad)


def test_cheb_domain_errors():
    with pytest.raises(DomainError):
        cheb_u_pair(3, float("nan"))
    with pytest.raises(DomainError):
        cheb_u_pair(-1, 0.5)
    with pytest.raises(DomainError):
        u_trig(2, 2.5)
