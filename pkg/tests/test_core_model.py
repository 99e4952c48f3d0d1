"""Unit tests for the payoff primitives and their exact identities."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from openness_eq import (
    DomainError,
    Equilibrium,
    GameParams,
    Regulation,
    StrategyProfile,
    generalist_cost,
    generalist_utility,
    revenue,
    specialist_cost,
    specialist_utility,
)
from openness_eq.bargaining import BargainingRule


APP_B = GameParams(alpha0=0.1, eps=0.1, c_omega=0.05)
REG_B = Regulation(theta=0.6, penalty=0.05)


def test_revenue_is_identity():
    assert revenue(0.0) == 0.0
    assert revenue(0.2746) == 0.2746
    assert revenue(1.0) == 1.0
    with pytest.raises(DomainError):
        revenue(-0.1)


class TestGeneralistCost:
    def test_compliant_point(self):
        # production + operation + no penalty, summed term by term
        expected = 0.1 * 0.6 + 0.05 * 0.2746 * (1 - 0.6) + 0.0
        got = generalist_cost(APP_B, REG_B, omega=0.6, alpha1=0.2746)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(0.0654920, abs=1e-7)

    def test_all_terms_vanish(self):
        p = GameParams(alpha0=1.0, eps=0.0, c_omega=0.0)
        assert generalist_cost(p, Regulation(0.0, 0.0), omega=0.0, alpha1=1.0) == 0.0

    def test_penalized_point(self):
        expected = 0.1 * 0.01 + 0.05 * 0.1024 * 0.99 + 0.05
        got = generalist_cost(APP_B, REG_B, omega=0.01, alpha1=0.1024)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(0.0560688, abs=1e-7)

    def test_penalty_is_strict_at_threshold(self):
        at = generalist_cost(APP_B, REG_B, omega=0.6, alpha1=0.2)
        below = generalist_cost(APP_B, REG_B, omega=0.6 - 1e-12, alpha1=0.2)
        assert below - at == pytest.approx(REG_B.penalty, abs=1e-9)


class TestSpecialistCost:
    def test_interior_point(self):
        expected = 0.1746**2 / 0.6 + 0.05 * 0.2746 * 0.6
        got = specialist_cost(APP_B, omega=0.6, alpha1=0.2746)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(0.0590466, abs=1e-7)

    def test_no_improvement_no_operation(self):
        p = GameParams(alpha0=0.7, eps=0.3, c_omega=0.0)
        assert specialist_cost(p, omega=1.0, alpha1=0.7) == 0.0

    def test_nearly_closed_point(self):
        expected = 0.0024**2 / 0.01 + 0.05 * 0.1024 * 0.01
        got = specialist_cost(APP_B, omega=0.01, alpha1=0.1024)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(0.0006272, abs=1e-7)

    def test_omega_zero_is_domain_error(self):
        with pytest.raises(DomainError):
            specialist_cost(APP_B, omega=0.0, alpha1=0.2)


class TestUtilities:
    def test_generalist_regulated_anchor(self):
        got = generalist_utility(APP_B, REG_B, delta=0.97, omega=0.6, alpha1=0.2746)
        assert got == pytest.approx(0.0575, abs=0.0005)

    def test_generalist_unregulated_anchor(self):
        got = generalist_utility(
            APP_B, Regulation(0.0, 0.0), delta=0.53, omega=0.01, alpha1=0.1024
        )
        assert got == pytest.approx(0.0478, abs=0.0005)

    def test_generalist_degenerate(self):
        p = GameParams(alpha0=0.4, eps=0.2, c_omega=0.3)
        got = generalist_utility(p, Regulation(0.0, 0.0), delta=0.0, omega=0.0, alpha1=0.4)
        assert got == pytest.approx(-p.c_omega * p.alpha0, abs=1e-15)

    def test_specialist_regulated_anchor(self):
        got = specialist_utility(APP_B, delta=0.97, omega=0.6, alpha1=0.2746)
        assert got == pytest.approx(0.1090, abs=0.0005)

    def test_specialist_unregulated_anchor(self):
        got = specialist_utility(APP_B, delta=0.53, omega=0.01, alpha1=0.1024)
        assert got == pytest.approx(0.0480, abs=0.0005)

    def test_specialist_full_share_zero_cost(self):
        p = GameParams(alpha0=0.9, eps=0.5, c_omega=0.0)
        assert specialist_utility(p, delta=1.0, omega=1.0, alpha1=0.9) == pytest.approx(
            p.alpha0, abs=1e-15
        )


valid_params = st.builds(
    GameParams,
    alpha0=st.floats(0.01, 5.0),
    eps=st.floats(0.0, 1.0),
    c_omega=st.floats(0.0, 0.5),
)


@given(
    params=valid_params,
    omega=st.floats(0.001, 1.0),
    alpha1=st.floats(0.01, 6.0),
)
def test_operation_costs_conserve(params, omega, alpha1):
    g_op = params.c_omega * alpha1 * (1.0 - omega)
    d_op = params.c_omega * alpha1 * omega
    total = params.c_omega * alpha1
    assert g_op + d_op == pytest.approx(total, rel=1e-12, abs=1e-15)


@given(
    params=valid_params,
    delta=st.floats(0.0, 1.0),
    omega=st.floats(0.001, 1.0),
    alpha1=st.floats(0.01, 6.0),
)
def test_revenue_shares_sum(params, delta, omega, alpha1):
    g_share = (params.eps * omega + delta * (1.0 - omega)) * revenue(alpha1)
    d_share = (1.0 - delta * (1.0 - omega)) * revenue(alpha1)
    assert g_share + d_share == pytest.approx((params.eps * omega + 1.0) * alpha1, rel=1e-12)


@given(
    params=valid_params,
    omega=st.floats(0.001, 1.0),
    extra=st.floats(0.0, 1.0),
    theta=st.floats(0.0, 1.0),
    penalty=st.floats(0.0, 2.0),
)
def test_costs_nonnegative(params, omega, extra, theta, penalty):
    alpha1 = params.alpha0 + extra
    reg = Regulation(theta=theta, penalty=penalty)
    assert generalist_cost(params, reg, omega, alpha1) >= 0.0
    assert specialist_cost(params, omega, alpha1) >= 0.0


@settings(max_examples=200)
@given(
    params=valid_params,
    delta=st.floats(0.0, 1.0),
    theta=st.floats(0.01, 0.99),
    penalty=st.floats(0.001, 1.0),
    extra=st.floats(0.0, 0.5),
)
def test_penalty_discontinuity(params, delta, theta, penalty, extra):
    """At fixed (delta, alpha1), utility jumps by exactly p across the threshold."""
    alpha1 = params.alpha0 + extra
    reg = Regulation(theta=theta, penalty=penalty)
    mu = 1e-9
    jump = generalist_utility(params, reg, delta, theta, alpha1) - generalist_utility(
        params, reg, delta, theta - mu, alpha1
    )
    assert jump == pytest.approx(penalty, abs=1e-6)


class TestTypes:
    def test_params_domain_checks(self):
        with pytest.raises(DomainError):
            GameParams(alpha0=0.0, eps=0.1, c_omega=0.0)
        with pytest.raises(DomainError):
            GameParams(alpha0=1.0, eps=1.5, c_omega=0.0)
        with pytest.raises(DomainError):
            GameParams(alpha0=1.0, eps=0.1, c_omega=-0.1)
        with pytest.raises(DomainError):
            GameParams(alpha0=1.0, eps=0.1, c_omega=0.0, omega_min=0.0)
        with pytest.raises(DomainError):
            GameParams(alpha0=1.0, eps=0.1, c_omega=0.0, delta_step=0.7)

    def test_regulation_domain_checks(self):
        with pytest.raises(DomainError):
            Regulation(theta=-0.1, penalty=0.0)
        with pytest.raises(DomainError):
            Regulation(theta=0.5, penalty=-1.0)

    def test_g_abstention_implies_d_abstention(self):
        with pytest.raises(DomainError):
            StrategyProfile(delta=0.5, omega=None, alpha1=0.3)
        profile = StrategyProfile(delta=0.5, omega=None, alpha1=None)
        assert profile.g_abstained and profile.d_abstained

    def test_abstention_forces_zero_utilities(self):
        profile = StrategyProfile(delta=0.5, omega=None, alpha1=None)
        with pytest.raises(DomainError):
            Equilibrium(profile=profile, u_g=0.1, u_d=0.0, rule=BargainingRule.NASH)
        eq = Equilibrium(profile=profile, u_g=0.0, u_d=0.0, rule=BargainingRule.NASH)
        assert math.isclose(eq.u_g, 0.0)
