"""Domain types and payoff primitives of the openness game.

Two players build and monetize an AI model. The *generalist* (G) has already
brought a base model to performance ``alpha0`` and chooses an openness level
``omega`` on a release continuum (0 = withheld, 1 = fully open). The
*specialist* (D) may then adopt the model and fine-tune it to a final
performance ``alpha1 >= alpha0``. Final revenue ``r(alpha1)`` (identity here)
is split through a bargained share ``delta`` of the closed-channel revenue;
the open fraction of revenue pays G only a reputational return ``eps`` per
unit of performance. A regulator publishes an openness threshold ``theta``
and charges G a flat penalty ``p`` whenever the released openness falls
short of it (strictly: ``omega < theta``).

Payoff algebra implemented by this module::

    G revenue share:  (eps*omega + delta*(1 - omega)) * r(alpha1)
    G cost:           alpha0*omega + c_omega*alpha1*(1 - omega) + p*[omega < theta]
    D revenue share:  (1 - delta*(1 - omega)) * r(alpha1)
    D cost:           (alpha1 - alpha0)**2 / omega + c_omega*alpha1*omega

Operation costs are shifted between the players by ``omega`` but always sum
to ``c_omega*alpha1``; the two revenue shares always sum to
``(eps*omega + 1)*alpha1``. Both identities are load-bearing and tested.

All functions here are pure; solver logic lives in :mod:`.best_response` and
:mod:`.bargaining`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # only for annotations; avoids a circular import
    from .bargaining import BargainingRule


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegionLabel(enum.Enum):
    """Classification of a regulation cell relative to its no-regulation baseline."""

    COMPLIANT = "COMPLIANT"
    CLOSED_DEADWEIGHT = "CLOSED_DEADWEIGHT"
    G_ABSTAIN = "G_ABSTAIN"
    D_ABSTAIN = "D_ABSTAIN"
    PARETO_IMPROVING = "PARETO_IMPROVING"
    OPEN_UNREGULATED = "OPEN_UNREGULATED"


@dataclass(frozen=True)
class GameParams:
    """Exogenous constants of the game plus solver knobs.

    Attributes:
        alpha0: Baseline performance of the released model, > 0.
        eps: Reputational return per unit performance on the open share, in [0, 1].
        c_omega: Operation (hosting/inference) cost per unit performance, >= 0.
        omega_min: Smallest released openness; stands in for the "essentially
            closed" strategy omega -> 0, which the specialist's production cost
            makes infeasible in the exact limit.
        delta_step: Grid step for the bargaining search over delta.
        tol: Numeric tolerance for tie-breaking and duplicate merging.
    """

    alpha0: float
    eps: float
    c_omega: float
    omega_min: float = 0.01
    delta_step: float = 0.01
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if not self.alpha0 > 0:
            raise DomainError(f"alpha0 must be > 0, got {self.alpha0}")
        if not 0.0 <= self.eps <= 1.0:
            raise DomainError(f"eps must be in [0, 1], got {self.eps}")
        if not self.c_omega >= 0.0:
            raise DomainError(f"c_omega must be >= 0, got {self.c_omega}")
        if not 0.0 < self.omega_min <= 1.0:
            raise DomainError(f"omega_min must be in (0, 1], got {self.omega_min}")
        if not 0.0 < self.delta_step <= 0.5:
            raise DomainError(f"delta_step must be in (0, 0.5], got {self.delta_step}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be > 0, got {self.tol}")


@dataclass(frozen=True)
class Regulation:
    """A regulatory profile: openness threshold and non-compliance penalty.

    ``penalty == 0`` encodes the no-regulation baseline (theta then has no
    effect on payoffs).
    """

    theta: float
    penalty: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            raise DomainError(f"theta must be in [0, 1], got {self.theta}")
        if not self.penalty >= 0.0:
            raise DomainError(f"penalty must be >= 0, got {self.penalty}")


NO_REGULATION = Regulation(theta=0.0, penalty=0.0)


@dataclass(frozen=True)
class StrategyProfile:
    """A solved strategy triple.

    ``omega is None`` marks G abstaining (model withheld); ``alpha1 is None``
    marks D abstaining (model released but not adopted). G abstaining implies
    D abstains too, since there is nothing to adopt.
    """

    delta: float
    omega: float | None
    alpha1: float | None

    def __post_init__(self) -> None:
        if self.omega is None and self.alpha1 is not None:
            raise DomainError("G abstention implies D abstention")

    @property
    def g_abstained(self) -> bool:
        return self.omega is None

    @property
    def d_abstained(self) -> bool:
        return self.alpha1 is None


@dataclass(frozen=True)
class Equilibrium:
    """A solved profile with both players' utilities under a bargaining rule.

    ``rule`` is the bargaining rule tag (see :mod:`.bargaining`); ``region``
    is filled by :mod:`.regulation_analysis` when the equilibrium is part of
    a classified sweep.
    """

    profile: StrategyProfile
    u_g: float
    u_d: float
    rule: BargainingRule
    region: RegionLabel | None = None

    def __post_init__(self) -> None:
        if self.profile.g_abstained and (self.u_g != 0.0 or self.u_d != 0.0):
            raise DomainError("abstention by G must yield (0, 0) utilities")


def revenue(alpha1: float) -> float:
    """Final revenue as a function of performance (identity map)."""
    if alpha1 < 0:
        raise DomainError(f"alpha1 must be >= 0, got {alpha1}")
    return alpha1


def generalist_cost(
    params: GameParams, reg: Regulation, omega: float, alpha1: float
) -> float:
    """G's cost: production + operation + regulatory penalty.

    The penalty applies iff ``omega < theta`` (strict), so releasing exactly
    at the threshold is compliant.
    """
    penalty = reg.penalty if omega < reg.theta else 0.0
    return params.alpha0 * omega + params.c_omega * alpha1 * (1.0 - omega) + penalty


def specialist_cost(params: GameParams, omega: float, alpha1: float) -> float:
    """D's cost: quadratic improvement cost discounted by openness, plus operation.

    Diverges as omega -> 0; passing omega == 0 is a :class:`DomainError` so
    callers go through the analytic-limit path in
    :func:`openness_eq.best_response.specialist_best_response` instead.
    """
    if omega == 0.0:
        raise DomainError("specialist cost is undefined at omega = 0")
    d = alpha1 - params.alpha0
    return d * d / omega + params.c_omega * alpha1 * omega


def generalist_utility(
    params: GameParams, reg: Regulation, delta: float, omega: float, alpha1: float
) -> float:
    """G's utility: blended revenue share minus cost.

    The open fraction ``omega`` of revenue returns ``eps`` per unit, the
    closed fraction returns the bargained ``delta``.
    """
    share = (params.eps * omega + delta * (1.0 - omega)) * revenue(alpha1)
    return share - generalist_cost(params, reg, omega, alpha1)


def specialist_utility(
    params: GameParams, delta: float, omega: float, alpha1: float
) -> float:
    """D's utility: residual revenue share minus improvement and operation costs."""
    share = (1.0 - delta * (1.0 - omega)) * revenue(alpha1)
    return share - specialist_cost(params, omega, alpha1)
