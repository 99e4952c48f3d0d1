"""Mapping regulation space: indifference curves, region labels, Pareto scans.

A regulation profile (theta, p) lands in one of a handful of qualitative
regions. Below the generalist's indifference curve, G complies (omega* >=
theta); above it the penalty is too small to move G, so it only destroys
utility (deadweight); extreme profiles push G out of the market entirely.
Within the compliant region, some profiles strictly improve openness, final
performance, and both utilities relative to the no-regulation baseline;
those cells are the Pareto-improving region.

The indifference curve has a closed form at fixed (delta, alpha1):

    p* = theta * (delta + alpha0/alpha1 - eps - c_omega) * alpha1

where "closed" utility is taken in the omega -> 0 limit. Because the full
game re-bargains delta and re-optimizes alpha1 on both sides of the curve,
the endogenous compliance boundary (found numerically by bisection in
:func:`indifference_boundary_numeric`) sits below the fixed-(delta, alpha1)
closed form; both are exposed because both are useful.

:func:`run_sweep` materializes rectangular grids of full equilibria over any
two swept parameters and classifies every cell against the matching
no-regulation baseline.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

from .bargaining import BargainingRule, solve_bargain
from .core_model import (
    DomainError,
    Equilibrium,
    GameParams,
    NO_REGULATION,
    RegionLabel,
    Regulation,
)

SWEEPABLE = ("alpha0", "eps", "c_omega", "theta", "penalty")

OBJECTIVE_FIELDS = ("omega", "alpha1", "u_g", "u_d")


@dataclass(frozen=True)
class Axis:
    """One swept parameter: name plus an inclusive linear range."""

    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if self.name not in SWEEPABLE:
            raise DomainError(f"axis {self.name!r} not sweepable; choose from {SWEEPABLE}")
        if self.steps < 2:
            raise DomainError(f"axis {self.name!r} needs steps >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise DomainError(f"axis {self.name!r} needs start < stop, got [{self.start}, {self.stop}]")

    def values(self) -> list[float]:
        span = self.stop - self.start
        return [round(self.start + i * span / (self.steps - 1), 12) for i in range(self.steps)]


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular sweep: two distinct axes over fixed remaining parameters."""

    x: Axis
    y: Axis
    params: GameParams
    reg: Regulation
    rule: BargainingRule

    def __post_init__(self) -> None:
        if self.x.name == self.y.name:
            raise DomainError(f"sweep axes must name distinct parameters, both are {self.x.name!r}")


@dataclass(frozen=True)
class SweepCell:
    """One solved grid cell; ``error`` marks cells whose inputs were invalid."""

    x: float
    y: float
    params: GameParams | None
    reg: Regulation | None
    eq: Equilibrium | None
    region: RegionLabel | None
    error: str | None = None


@dataclass(frozen=True)
class SweepTable:
    """Row-major grid of classified equilibria (y outer, x inner).

    ``baseline`` is the no-regulation equilibrium of the sweep's fixed
    parameters; cells that sweep a game constant (alpha0/eps/c_omega) are
    classified against the baseline for their own constants instead.
    """

    spec: SweepSpec
    cells: tuple[SweepCell, ...]
    baseline: Equilibrium

    def cell(self, ix: int, iy: int) -> SweepCell:
        return self.cells[iy * self.spec.x.steps + ix]


@dataclass(frozen=True)
class ParetoWeighting:
    """A strictly positive weight vector over objective fields, summing to 1."""

    objectives: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.objectives:
            raise DomainError("objectives must be nonempty")
        for name in self.objectives:
            if name not in OBJECTIVE_FIELDS:
                raise DomainError(f"unknown objective {name!r}; choose from {OBJECTIVE_FIELDS}")
        if len(self.weights) != len(self.objectives):
            raise DomainError("weights and objectives must have equal length")
        if any(w <= 0 for w in self.weights):
            raise DomainError("weights must be strictly positive")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise DomainError(f"weights must sum to 1, got {sum(self.weights)}")


@dataclass(frozen=True)
class ParetoRegionBounds:
    """Outer bounds for the Pareto-improving region in (penalty, theta) space.

    ``p_lower`` is the fixed-(delta, alpha1) indifference penalty at the
    no-regulation equilibrium values plus a tolerance margin. It is a closed
    form, not the endogenous compliance boundary, and over-states the true
    lower edge of the region (re-bargaining makes compliance attractive at
    smaller penalties); use :func:`indifference_boundary_numeric` for the
    exact edge.
    """

    theta_max: float
    p_upper: float
    p_lower: Callable[[float], float]
    delta_star: float
    alpha1_star: float


def indifference_penalty(
    theta: float, delta: float, alpha0: float, alpha1: float, eps: float, c_omega: float
) -> float:
    """Penalty making G indifferent between closed (omega -> 0) and omega = theta.

    Holds (delta, alpha1) fixed on both sides. For p <= p* the closed
    strategy weakly dominates compliance at these values; p* < 0 means
    compliance dominates at every penalty.
    """
    if alpha1 == 0.0:
        raise ZeroDivisionError("alpha1 must be positive")
    return theta * (delta + alpha0 / alpha1 - eps - c_omega) * alpha1


def indifference_boundary_numeric(
    params: GameParams,
    rule: BargainingRule,
    theta: float,
    p_max: float,
    tol_p: float = 1e-4,
) -> float:
    """Smallest penalty whose full equilibrium complies with theta, by bisection.

    Unlike :func:`indifference_penalty`, delta and alpha1 are endogenous here:
    every probe re-solves the bargain. Returns 0 when the unregulated
    equilibrium already complies and the ``p_max`` sentinel when no penalty
    in [0, p_max] induces compliance (including when G abstains instead).
    """
    if p_max <= 0:
        raise DomainError(f"p_max must be > 0, got {p_max}")
    if tol_p <= 0:
        raise DomainError(f"tol_p must be > 0, got {tol_p}")

    def complies(p: float) -> bool:
        eq = solve_bargain(params, Regulation(theta=theta, penalty=p), rule)
        omega = eq.profile.omega
        return omega is not None and omega >= theta

    if complies(0.0):
        return 0.0
    # Coarse ascent first: compliance holds on an interval, not a ray (huge
    # penalties can tip G into abstention), so bracket before bisecting.
    lo, hi = 0.0, None
    for i in range(1, 17):
        p = p_max * i / 16.0
        if complies(p):
            hi = p
            break
        lo = p
    if hi is None:
        return p_max
    while hi - lo > tol_p:
        mid = 0.5 * (lo + hi)
        if complies(mid):
            hi = mid
        else:
            lo = mid
    return hi


def classify_cell(eq: Equilibrium, reg: Regulation, baseline: Equilibrium) -> RegionLabel:
    """Label one solved cell against the no-regulation baseline.

    Pareto improvement requires all four of (omega, alpha1, u_g, u_d) to
    strictly exceed their baseline values; ties are not improvements.
    """
    profile = eq.profile
    if profile.g_abstained:
        return RegionLabel.G_ABSTAIN
    if profile.d_abstained:
        return RegionLabel.D_ABSTAIN
    if reg.penalty == 0.0:
        return RegionLabel.OPEN_UNREGULATED
    if profile.omega >= reg.theta:
        base = baseline.profile
        if (
            not base.g_abstained
            and not base.d_abstained
            and profile.omega > base.omega
            and profile.alpha1 > base.alpha1
            and eq.u_g > baseline.u_g
            and eq.u_d > baseline.u_d
        ):
            return RegionLabel.PARETO_IMPROVING
        return RegionLabel.COMPLIANT
    return RegionLabel.CLOSED_DEADWEIGHT


def _with_axis_value(
    params: GameParams, reg: Regulation, name: str, value: float
) -> tuple[GameParams, Regulation]:
    if name in ("theta", "penalty"):
        return params, replace(reg, **{name: value})
    return replace(params, **{name: value}), reg


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Solve and classify every cell of the sweep.

    Cells whose parameter combination is out of domain are recorded as
    invalid (``error`` set) rather than aborting the sweep. Baselines are
    cached per distinct game-constant triple, so (penalty, theta) sweeps
    share a single baseline solve.
    """
    baseline_cache: dict[GameParams, Equilibrium] = {}

    def baseline_for(params: GameParams) -> Equilibrium:
        eq = baseline_cache.get(params)
        if eq is None:
            eq = solve_bargain(params, NO_REGULATION, rule=spec.rule)
            baseline_cache[params] = eq
        return eq

    cells: list[SweepCell] = []
    for y in spec.y.values():
        for x in spec.x.values():
            try:
                params, reg = _with_axis_value(spec.params, spec.reg, spec.x.name, x)
                params, reg = _with_axis_value(params, reg, spec.y.name, y)
                eq = solve_bargain(params, reg, spec.rule)
                region = classify_cell(eq, reg, baseline_for(params))
                eq = replace(eq, region=region)
                cells.append(SweepCell(x=x, y=y, params=params, reg=reg, eq=eq, region=region))
            except DomainError as exc:
                cells.append(
                    SweepCell(x=x, y=y, params=None, reg=None, eq=None, region=None, error=str(exc))
                )
    return SweepTable(spec=spec, cells=tuple(cells), baseline=baseline_for(spec.params))


def pareto_region_bounds(
    params: GameParams, rule: BargainingRule, p_max: float
) -> ParetoRegionBounds:
    """Outer bounds for where Pareto-improving regulation can live.

    theta is capped by the specialist's participation at omega = theta under
    the baseline share delta*: unbounded (1.0) when c_omega <= delta*, else
    (1 - delta*)/(c_omega - delta*). Penalties are capped by ``p_max`` since
    raising p below the indifference curve changes nothing.
    """
    baseline = solve_bargain(params, NO_REGULATION, rule)
    profile = baseline.profile
    if profile.g_abstained or profile.d_abstained:
        raise DomainError("no participating baseline equilibrium; Pareto bounds undefined")
    delta_star = profile.delta
    alpha1_star = profile.alpha1
    if params.c_omega <= delta_star:
        theta_max = 1.0
    else:
        theta_max = min(1.0, (1.0 - delta_star) / (params.c_omega - delta_star))

    def p_lower(theta: float) -> float:
        return (
            indifference_penalty(theta, delta_star, params.alpha0, alpha1_star, params.eps, params.c_omega)
            + params.tol
        )

    return ParetoRegionBounds(
        theta_max=theta_max,
        p_upper=p_max,
        p_lower=p_lower,
        delta_star=delta_star,
        alpha1_star=alpha1_star,
    )


def _simplex_weights(d: int, steps: int) -> list[tuple[float, ...]]:
    """All strictly positive rational weight vectors with denominator ``steps``."""
    out: list[tuple[float, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple((m / steps) for m in prefix + [remaining]))
            return
        for m in range(1, remaining - slots + 2):
            rec(prefix + [m], remaining - m, slots - 1)

    rec([], steps, d)
    return out


def _objective_vector(cell: SweepCell, objectives: Sequence[str]) -> tuple[float, ...] | None:
    if cell.eq is None:
        return None
    profile = cell.eq.profile
    if profile.g_abstained or profile.d_abstained:
        return None
    values = {
        "omega": profile.omega,
        "alpha1": profile.alpha1,
        "u_g": cell.eq.u_g,
        "u_d": cell.eq.u_d,
    }
    return tuple(values[name] for name in objectives)


def pareto_optimal_policies(
    table: SweepTable,
    weighting_grid_steps: int,
    objectives: Sequence[str] = OBJECTIVE_FIELDS,
) -> set[tuple[float, float]]:
    """Regulation profiles maximizing some positive weighting of the objectives.

    Enumerates weight vectors on the standard simplex at the given
    resolution; for each, the best-scoring cell (first in row-major order on
    ties) contributes its (penalty, theta) pair. Cells with abstentions or
    invalid inputs carry no objective vector and are skipped.
    """
    if weighting_grid_steps < 2:
        raise DomainError(f"weighting_grid_steps must be >= 2, got {weighting_grid_steps}")
    names = tuple(objectives)
    scored: list[tuple[SweepCell, tuple[float, ...]]] = []
    for cell in table.cells:
        vec = _objective_vector(cell, names)
        if vec is not None:
            scored.append((cell, vec))
    if not scored:
        return set()

    winners: set[tuple[float, float]] = set()
    for weights in _simplex_weights(len(names), weighting_grid_steps):
        ParetoWeighting(objectives=names, weights=weights)  # domain check
        best_cell = None
        best_score = -float("inf")
        for cell, vec in scored:
            score = sum(w * v for w, v in zip(weights, vec))
            if score > best_score:
                best_score = score
                best_cell = cell
        winners.add((best_cell.reg.penalty, best_cell.reg.theta))
    return winners
