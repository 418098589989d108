import numpy as np
import pytest

from jacspec.basis import Coupling
from jacspec.errors import DomainError
from jacspec.oracle import truncated_spectrum
from jacspec.resolvent import d_abs_sq
from jacspec.spectrum import (BranchSide, beta_of_lambda,
                              beta_of_lambda_displayed, beta_pm,
                              critical_coupling, eigenvalue, resonance_report)


@pytest.mark.parametrize("k,expected", [(0, 1.0), (1, 0.5), (9, 0.1)])
def test_critical_coupling(k, expected):
    assert critical_coupling(k) == expected


@pytest.mark.parametrize("k", range(0, 9))
def test_beta_pm_double_root_at_edges(k):
    for edge, sign in ((2.0, 1.0), (-2.0, -1.0)):
        plus, minus = beta_pm(k, edge)
        assert plus == pytest.approx(sign / (k + 1), abs=1e-12)
        assert minus == pytest.approx(sign / (k + 1), abs=1e-12)


def test_beta_pm_hand_roots():
    plus, minus = beta_pm(0, 2.5)
    assert plus == pytest.approx(2.0, abs=1e-14)
    assert minus == pytest.approx(0.5, abs=1e-14)
    # roots of beta^2 - 2.5 beta + 1
    for r in (plus, minus):
        assert r * r - 2.5 * r + 1 == pytest.approx(0.0, abs=1e-13)


def test_beta_pm_no_real_roots_inside():
    for lam in (-1.9, -0.5, 0.0, 1.2, 1.999):
        with pytest.raises(DomainError):
            beta_pm(3, lam)


def test_beta_of_lambda_hand_values():
    assert beta_of_lambda(0, 2.5) == pytest.approx(2.0, abs=1e-14)
    assert beta_of_lambda(1, 2.5) == pytest.approx(1.6, abs=1e-14)


def test_beta_of_lambda_edge_limit():
    for k in (0, 2, 5):
        assert beta_of_lambda(k, 2.0 + 1e-12) == pytest.approx(
            critical_coupling(k), rel=1e-5)
        assert beta_of_lambda(k, -2.0 - 1e-12) == pytest.approx(
            -critical_coupling(k), rel=1e-5)


def test_beta_of_lambda_sign_and_magnitude():
    rng = np.random.default_rng(4)
    for _ in range(200):
        k = int(rng.integers(0, 9))
        lam = float(rng.uniform(2.0001, 8.0) * rng.choice([-1.0, 1.0]))
        b = beta_of_lambda(k, lam)
        assert np.sign(b) == np.sign(lam)
        assert abs(b) > critical_coupling(k)


def test_displayed_formula_matches_compact():
    rng = np.random.default_rng(6)
    for _ in range(100):
        k = int(rng.integers(0, 9))
        lam = float(rng.uniform(2.0 + 1e-6, 6.0) * rng.choice([-1.0, 1.0]))
        compact = beta_of_lambda(k, lam)
        displayed = beta_of_lambda_displayed(k, lam)
        assert abs(displayed - compact) <= 1e-12 * max(1.0, abs(compact))


def test_beta_monotone_both_sides():
    lams = np.linspace(2.0 + 1e-6, 9.0, 300)
    for k in (0, 1, 4, 8):
        vals = np.array([beta_of_lambda(k, float(x)) for x in lams])
        assert np.all(np.diff(vals) > 0)
        vals_neg = np.array([beta_of_lambda(k, float(-x)) for x in lams])
        assert np.all(np.diff(vals_neg) < 0)


def test_beta_pm_physical_root_matches_inverse():
    rng = np.random.default_rng(13)
    for _ in range(100):
        k = int(rng.integers(0, 9))
        lam = float(rng.uniform(2.0 + 1e-6, 6.0) * rng.choice([-1.0, 1.0]))
        plus, minus = beta_pm(k, lam)
        physical = plus if abs(plus) >= abs(minus) else minus
        assert abs(physical - beta_of_lambda(k, lam)) <= 1e-12 * max(1.0, abs(physical))


def test_eigenvalue_anchor():
    r = eigenvalue(Coupling(0, 2.0))
    assert r.exists and r.side is BranchSide.RIGHT
    assert r.lam == pytest.approx(2.5, abs=1e-10)
    # closed form for site 0: lam = beta + 1/beta
    for beta in (1.2, 1.7, 3.0, 8.0):
        assert eigenvalue(Coupling(0, beta)).lam == pytest.approx(
            beta + 1 / beta, abs=1e-11)
        assert eigenvalue(Coupling(0, -beta)).lam == pytest.approx(
            -(beta + 1 / beta), abs=1e-11)


def test_eigenvalue_below_critical():
    r = eigenvalue(Coupling(3, 0.2))
    assert not r.exists
    assert r.lam is None
    assert r.side is BranchSide.NONE
    assert r.beta_critical == 0.25
    assert eigenvalue(Coupling(1, 0.5)).exists is False  # exactly critical


def test_eigenvalue_side_matches_sign():
    assert eigenvalue(Coupling(2, 1.0)).side is BranchSide.RIGHT
    assert eigenvalue(Coupling(2, -1.0)).side is BranchSide.LEFT
    assert eigenvalue(Coupling(1, 1.6)).lam == pytest.approx(2.5, abs=1e-11)


def test_inversion_roundtrip():
    for k in range(0, 9):
        beta_c = critical_coupling(k)
        for i in (1, 5, 20, 50):
            beta = beta_c + (4.0 - beta_c) * (i / 50.0) ** 2
            for b in (beta, -beta):
                r = eigenvalue(Coupling(k, b))
                assert abs(beta_of_lambda(k, r.lam) - b) <= 1e-11 * abs(b)


def test_eigenvalue_matches_truncation():
    for k, b in ((0, 2.0), (1, -1.6), (2, 1.0), (3, 0.7), (5, -0.5)):
        lam = eigenvalue(Coupling(k, b)).lam
        res = truncated_spectrum(Coupling(k, b), 2000)
        extreme = res.eigenvalues[-1] if b > 0 else res.eigenvalues[0]
        assert lam == pytest.approx(float(extreme), abs=1e-8)


def test_near_critical_edge_limited():
    r = eigenvalue(Coupling(0, 1.0 + 1e-14))
    assert r.exists
    assert 2.0 < r.lam < 2.0 + 1e-10


@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_resonance_report(k):
    rep = resonance_report(k)
    assert rep.beta_critical == 1.0 / (k + 1)
    assert rep.plateau_target == (k + 1) ** 2
    assert rep.n_lo == 2 * k + 2 and rep.n_hi == 2 * k + 30
    assert rep.max_plateau_residual <= 1e-9
    assert abs(rep.edge_dsq_upper) <= 1e-12
    assert abs(rep.edge_dsq_lower) <= 1e-12
    assert rep.square_sum_diverges is True
    assert rep.band_edge_is_eigenvalue is False


def test_resonance_hand_case_k0():
    # |phi_n(2)|^2 = 1 for n >= 2 at beta = 1, and |D|^2 = 1 + 1 - 2 = 0
    rep = resonance_report(0)
    assert rep.plateau_target == 1.0
    assert d_abs_sq(Coupling(0, 1.0), 2.0) == 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        beta_of_lambda(2, 1.5)
    with pytest.raises(DomainError):
        beta_of_lambda(2, 2.0)
    with pytest.raises(DomainError):
        critical_coupling(-1)
