"""Endogenous revenue-sharing stage: pick delta* by grid search.

An analytical solution for the bargained share is intractable because G's
induced openness choice is discontinuous in delta, so the bargain is solved
by exhaustive search over the delta grid {0, delta_step, ..., 1}. Each grid
point induces a full subgame equilibrium via
:func:`openness_eq.best_response.generalist_best_response`; the bargaining
rule then scores the resulting utility pair and the best-scoring delta wins.

The disagreement point is (0, 0), matching the abstention payoffs; profiles
with a negative utility never reach the objective because abstention logic
already replaced them upstream.
"""

from __future__ import annotations

import enum

from .best_response import _scan_candidates
from .core_model import Equilibrium, GameParams, Regulation, StrategyProfile


class BargainingRule(enum.Enum):
    """How the two utilities are aggregated when bargaining over delta."""

    NASH = "nash"  # product of utilities
    VM = "vm"  # vertical monopoly: sum of utilities
    EGALITARIAN = "egalitarian"  # minimum of the two utilities

    @classmethod
    def parse(cls, text: str) -> "BargainingRule":
        try:
            return cls(text.strip().lower())
        except ValueError:
            valid = ", ".join(r.value for r in cls)
            raise ValueError(f"unknown bargaining rule {text!r}; expected one of: {valid}") from None


def bargaining_objective(rule: BargainingRule, u_g: float, u_d: float) -> float:
    """Joint value of a utility pair under the given rule."""
    if rule is BargainingRule.NASH:
        return u_g * u_d
    if rule is BargainingRule.VM:
        return u_g + u_d
    if rule is BargainingRule.EGALITARIAN:
        return min(u_g, u_d)
    raise ValueError(f"unknown bargaining rule: {rule!r}")


def delta_grid(step: float) -> list[float]:
    """The bargaining grid {0, step, ..., 1}, endpoints always included."""
    n = int(round(1.0 / step))
    values = [round(i * step, 12) for i in range(n + 1) if i * step <= 1.0 + 1e-12]
    if values[-1] != 1.0:
        values.append(1.0)
    return values


def solve_bargain(params: GameParams, reg: Regulation, rule: BargainingRule) -> Equilibrium:
    """Solve the full game: delta* maximizes the bargaining objective on the grid.

    Objective ties within ``tol`` break toward the larger delta (and the
    larger omega inside each delta's best response), so identical inputs
    always produce the identical equilibrium.
    """
    rows: list[tuple[float, float | None, float | None, float, float, float]] = []
    for delta in delta_grid(params.delta_step):
        omega, alpha1, u_g, u_d = _scan_candidates(params, reg, delta)
        rows.append((delta, omega, alpha1, u_g, u_d, bargaining_objective(rule, u_g, u_d)))

    best = max(r[5] for r in rows)
    chosen = rows[0]
    for row in rows[1:]:  # rows are delta-ascending: last tie wins
        if row[5] >= best - params.tol:
            chosen = row
    delta, omega, alpha1, u_g, u_d, _ = chosen
    profile = StrategyProfile(delta=delta, omega=omega, alpha1=alpha1)
    return Equilibrium(profile=profile, u_g=u_g, u_d=u_d, rule=rule)
