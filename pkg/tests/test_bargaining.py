"""Bargaining objective and full-game grid search."""

from __future__ import annotations

import numpy as np
import pytest

from openness_eq import (
    BargainingRule,
    GameParams,
    NO_REGULATION,
    Regulation,
    bargaining_objective,
    delta_grid,
    generalist_best_response,
    solve_bargain,
)

APP_B = GameParams(alpha0=0.1, eps=0.1, c_omega=0.05)


class TestObjective:
    def test_nash_product(self):
        assert bargaining_objective(BargainingRule.NASH, 0.0478, 0.0480) == pytest.approx(
            0.0022944, abs=1e-10
        )

    def test_vm_additive_identity(self):
        assert bargaining_objective(BargainingRule.VM, 0.0, 0.37) == 0.37

    def test_egalitarian_symmetric(self):
        assert bargaining_objective(BargainingRule.EGALITARIAN, 0.3, 0.3) == 0.3

    def test_nash_is_symmetric(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            a, b = rng.uniform(0, 1, size=2)
            assert bargaining_objective(BargainingRule.NASH, a, b) == bargaining_objective(
                BargainingRule.NASH, b, a
            )

    def test_rule_parsing(self):
        assert BargainingRule.parse("Nash") is BargainingRule.NASH
        assert BargainingRule.parse("VM") is BargainingRule.VM
        with pytest.raises(ValueError):
            BargainingRule.parse("kalai")


class TestDeltaGrid:
    def test_default_grid(self):
        grid = delta_grid(0.01)
        assert grid[0] == 0.0
        assert grid[-1] == 1.0
        assert len(grid) == 101
        assert 0.53 in grid and 0.97 in grid

    def test_non_dividing_step_still_reaches_one(self):
        grid = delta_grid(0.3)
        assert grid == [0.0, 0.3, 0.6, 0.9, 1.0]


class TestSolveBargain:
    def test_unregulated_anchor(self):
        eq = solve_bargain(APP_B, NO_REGULATION, BargainingRule.NASH)
        assert eq.profile.delta == pytest.approx(0.53, abs=0.01)
        assert eq.profile.omega == 0.01
        assert eq.profile.alpha1 == pytest.approx(0.1024, abs=0.0005)
        assert eq.u_g == pytest.approx(0.0478, abs=0.0005)
        assert eq.u_d == pytest.approx(0.0480, abs=0.0005)

    def test_regulated_anchor(self):
        eq = solve_bargain(APP_B, Regulation(theta=0.6, penalty=0.05), BargainingRule.NASH)
        assert eq.profile.delta == pytest.approx(0.97, abs=0.01)
        assert eq.profile.omega == 0.6
        assert eq.profile.alpha1 == pytest.approx(0.2746, abs=0.0005)
        assert eq.u_g == pytest.approx(0.0575, abs=0.0005)
        assert eq.u_d == pytest.approx(0.1090, abs=0.0005)

    def test_high_baseline_anchor(self):
        p = GameParams(alpha0=1.0, eps=0.1, c_omega=0.01)
        eq = solve_bargain(p, NO_REGULATION, BargainingRule.NASH)
        assert eq.profile.omega == 0.01
        assert eq.profile.alpha1 == pytest.approx(1.00, abs=0.01)
        assert eq.profile.delta == pytest.approx(0.5, abs=0.02)
        assert eq.u_g == pytest.approx(0.492, abs=0.01)
        assert eq.u_d == pytest.approx(0.491, abs=0.01)

    def test_grid_exhaustiveness(self):
        """No grid delta scores strictly above the returned equilibrium."""
        reg = Regulation(theta=0.6, penalty=0.05)
        for rule in BargainingRule:
            eq = solve_bargain(APP_B, reg, rule)
            best = bargaining_objective(rule, eq.u_g, eq.u_d)
            for delta in delta_grid(APP_B.delta_step):
                _, u_g, u_d = generalist_best_response(APP_B, reg, delta)
                assert bargaining_objective(rule, u_g, u_d) <= best + APP_B.tol

    def test_equilibrium_utilities_nonnegative_or_abstained(self):
        rng = np.random.default_rng(22)
        for _ in range(25):
            p = GameParams(
                alpha0=float(rng.uniform(0.02, 3)),
                eps=float(rng.uniform(0, 1)),
                c_omega=float(rng.uniform(0, 0.5)),
                delta_step=0.05,
            )
            reg = Regulation(theta=float(rng.uniform(0, 1)), penalty=float(rng.uniform(0, 1)))
            rule = rng.choice(list(BargainingRule))
            eq = solve_bargain(p, reg, rule)
            if eq.profile.g_abstained:
                assert (eq.u_g, eq.u_d) == (0.0, 0.0)
            else:
                assert eq.u_g >= 0.0
                assert eq.u_d >= 0.0

    def test_deterministic(self):
        reg = Regulation(theta=0.35, penalty=0.12)
        first = solve_bargain(APP_B, reg, BargainingRule.EGALITARIAN)
        second = solve_bargain(APP_B, reg, BargainingRule.EGALITARIAN)
        assert first == second  # frozen dataclasses compare field-by-field, bit-exact

    def test_ties_break_toward_larger_delta(self):
        # With abstention at every delta the objective is flat at zero, so the
        # tie must resolve to the largest grid point.
        p = GameParams(alpha0=0.001, eps=0.0, c_omega=0.05)
        eq = solve_bargain(p, Regulation(theta=1.0, penalty=100.0), BargainingRule.NASH)
        assert eq.profile.g_abstained
        assert eq.profile.delta == 1.0
