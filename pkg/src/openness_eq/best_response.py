"""Closed-form best responses for both players, with brute-force oracles.

The game is solved backward. For a fixed revenue share ``delta`` and openness
``omega``, the specialist's payoff is strictly concave in ``alpha1``
(second derivative ``-2/omega``), so D's reply is a closed form:

    alpha1* = alpha0 + omega * (1 - delta*(1 - omega) - c_omega*omega) / 2

when the participation condition ``1 - delta*(1 - omega) - c_omega*omega >= 0``
holds, and abstention otherwise. The condition is evaluated in exactly this
product form: the textbook rearrangement ``omega <= (1 - delta)/(c_omega -
delta)`` flips sign when ``c_omega <= delta`` (participation then holds for
every omega) and is a classic source of bugs.

Substituting D's reply into G's penalty-free objective makes it a cubic in
``omega``, so interior stationary points solve the quadratic
``a*omega**2 + b*omega + c = 0`` computed by :func:`quadratic_coefficients`.
G's optimum over each penalty branch is therefore attained on the finite
candidate set {interior roots, omega_min, theta, 1} plus outright abstention,
which :func:`generalist_best_response` scans directly.

Both closed forms are paired with exhaustive grid oracles
(:func:`specialist_oracle`, :func:`generalist_oracle`) used by the test suite
to validate the algebra; the oracles never call the closed-form path for the
quantity they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_model import (
    DomainError,
    GameParams,
    Regulation,
    StrategyProfile,
    generalist_utility,
    specialist_utility,
)


class _OmegaLimitZero:
    """Marker for the analytic limit omega -> 0+ (model effectively withheld)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "OMEGA_LIMIT_ZERO"


class _GAbstain:
    """Marker for G's outside option in a candidate list."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "G_ABSTAIN"


OMEGA_LIMIT_ZERO = _OmegaLimitZero()
G_ABSTAIN = _GAbstain()


@dataclass(frozen=True)
class SpecialistResponse:
    """D's reply to a released model: a performance level, or abstention."""

    alpha1: float | None

    @property
    def abstained(self) -> bool:
        return self.alpha1 is None


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Coefficients of d/d(omega) of G's penalty-free reduced objective.

    "Reduced" means D's closed-form reply is substituted for alpha1, so the
    derivative is the quadratic ``a*omega**2 + b*omega + c`` whose real roots
    are G's interior stationary points.
    """

    a: float
    b: float
    c: float


def specialist_participates(delta: float, omega: float, c_omega: float) -> bool:
    """Whether adopting the model at (delta, omega) beats D's outside option.

    Evaluated as ``1 - delta*(1 - omega) - c_omega*omega >= 0``, i.e. D's
    revenue share at baseline performance covers its operation cost.
    """
    return 1.0 - delta * (1.0 - omega) - c_omega * omega >= 0.0


def specialist_best_response(
    params: GameParams, delta: float, omega: float | _OmegaLimitZero
) -> SpecialistResponse:
    """D's utility-maximizing performance, or abstention.

    Accepts the :data:`OMEGA_LIMIT_ZERO` marker for the closed limit, where
    the improvement term vanishes and the reply is exactly ``alpha0``.
    """
    if omega is OMEGA_LIMIT_ZERO:
        return SpecialistResponse(params.alpha0)
    if not 0.0 < omega <= 1.0:
        raise DomainError(f"omega must be in (0, 1], got {omega}")
    margin = 1.0 - delta * (1.0 - omega) - params.c_omega * omega
    if margin < 0.0:
        return SpecialistResponse(None)
    return SpecialistResponse(params.alpha0 + 0.5 * omega * margin)


def specialist_oracle(
    params: GameParams, delta: float, omega: float, grid_step: float = 1e-5
) -> float:
    """Brute-force argmax of D's utility over alpha1, with one refinement pass.

    Scans alpha1 in [alpha0, alpha0 + 1]; the upper bound is safe because the
    closed-form improvement ``omega*(1 - delta*(1-omega) - c_omega*omega)/2``
    never exceeds 1/2 on the valid domain.
    """
    if not 0.0 < omega <= 1.0:
        raise DomainError(f"omega must be in (0, 1], got {omega}")
    if grid_step <= 0:
        raise DomainError(f"grid_step must be > 0, got {grid_step}")

    def scan(lo: float, hi: float, step: float) -> float:
        alphas = np.arange(lo, hi + step / 2, step)
        share = (1.0 - delta * (1.0 - omega)) * alphas
        d = alphas - params.alpha0
        cost = d * d / omega + params.c_omega * alphas * omega
        return float(alphas[int(np.argmax(share - cost))])

    best = scan(params.alpha0, params.alpha0 + 1.0, grid_step)
    lo = max(params.alpha0, best - grid_step)
    return scan(lo, best + grid_step, grid_step / 100.0)


def quadratic_coefficients(params: GameParams, delta: float) -> QuadraticCoefficients:
    """Stationarity coefficients of G's reduced objective at a given delta.

    With s = eps - delta + c_omega and q = delta - c_omega:

        a = (3/2) * q * s
        b = (1 - delta) * s + q**2
        c = (s - 1) * alpha0 + (1 - delta) * q / 2
    """
    s = params.eps - delta + params.c_omega
    q = delta - params.c_omega
    a = 1.5 * q * s
    b = (1.0 - delta) * s + q * q
    c = (s - 1.0) * params.alpha0 + 0.5 * (1.0 - delta) * q
    return QuadraticCoefficients(a, b, c)


def _real_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of a*x**2 + b*x + c = 0, degenerating gracefully to linear."""
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        return []
    if abs(a) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    if disc == 0.0:
        return [-b / (2.0 * a)]
    # Citardauq pairing avoids cancellation when b dominates.
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = [q / a]
    if q != 0.0:
        roots.append(c / q)
    else:
        roots.append(-b / (2.0 * a))
    return sorted(roots)


def generalist_candidates(
    params: GameParams, reg: Regulation, delta: float
) -> list[float | _GAbstain]:
    """G's exhaustive openness candidate set at a given delta.

    Interior stationary roots are kept only inside (omega_min, 1]; the closed
    strategy omega_min, the threshold theta (when releasable), and the fully
    open strategy 1 are always included, as is the abstention option.
    Near-duplicates within ``tol`` are merged.
    """
    coeffs = quadratic_coefficients(params, delta)
    values = [params.omega_min]
    for root in _real_roots(coeffs.a, coeffs.b, coeffs.c):
        if params.omega_min < root <= 1.0:
            values.append(root)
    if params.omega_min <= reg.theta <= 1.0:
        values.append(reg.theta)
    values.append(1.0)
    values.sort()
    merged: list[float] = [values[0]]
    for v in values[1:]:
        if v - merged[-1] > params.tol:
            merged.append(v)
    out: list[float | _GAbstain] = list(merged)
    out.append(G_ABSTAIN)
    return out


def _scan_candidates(
    params: GameParams, reg: Regulation, delta: float
) -> tuple[float | None, float | None, float, float]:
    """Evaluate every candidate openness and return the best profile as floats.

    Returns (omega, alpha1, u_g, u_d); omega None encodes G abstention and
    alpha1 None encodes D abstention at the chosen omega. When D abstains at
    a candidate, G's utility there is evaluated at alpha1 = alpha0 with G's
    own costs and u_d = 0.
    """
    alpha0 = params.alpha0
    rows: list[tuple[float, float | None, float, float]] = []
    for omega in generalist_candidates(params, reg, delta):
        if omega is G_ABSTAIN:
            continue
        margin = 1.0 - delta * (1.0 - omega) - params.c_omega * omega
        if margin >= 0.0:
            alpha1: float | None = alpha0 + 0.5 * omega * margin
            u_g = generalist_utility(params, reg, delta, omega, alpha1)
            u_d = specialist_utility(params, delta, omega, alpha1)
        else:
            alpha1 = None
            u_g = generalist_utility(params, reg, delta, omega, alpha0)
            u_d = 0.0
        rows.append((omega, alpha1, u_g, u_d))

    best_u = max(r[2] for r in rows)
    if best_u < 0.0:
        return None, None, 0.0, 0.0
    # Ties within tol resolve to the largest omega (rows are omega-ascending).
    chosen = rows[0]
    for row in rows[1:]:
        if row[2] >= best_u - params.tol:
            chosen = row
    return chosen


def generalist_best_response(
    params: GameParams, reg: Regulation, delta: float
) -> tuple[StrategyProfile, float, float]:
    """G's utility-maximizing openness with D's induced reply and utilities.

    Scans the candidate set of :func:`generalist_candidates`, charging the
    penalty on every candidate below theta; abstains (zero utilities) iff
    every candidate leaves G with negative utility.
    """
    omega, alpha1, u_g, u_d = _scan_candidates(params, reg, delta)
    return StrategyProfile(delta=delta, omega=omega, alpha1=alpha1), u_g, u_d


def generalist_oracle(
    params: GameParams, reg: Regulation, delta: float, grid_step: float = 1e-4
) -> tuple[StrategyProfile, float, float]:
    """Exhaustive grid scan of G's objective over omega, plus abstention.

    Validation twin of :func:`generalist_best_response`: same D reply
    formula, but the openness search is a dense grid over [omega_min, 1]
    with theta inserted exactly, instead of the analytic candidate set.
    """
    if grid_step <= 0:
        raise DomainError(f"grid_step must be > 0, got {grid_step}")
    n = int(math.floor((1.0 - params.omega_min) / grid_step)) + 1
    omegas = params.omega_min + grid_step * np.arange(n)
    extra = [1.0]
    if params.omega_min <= reg.theta <= 1.0:
        extra.append(reg.theta)
    omegas = np.unique(np.concatenate([omegas, np.asarray(extra)]))

    margin = 1.0 - delta * (1.0 - omegas) - params.c_omega * omegas
    participates = margin >= 0.0
    alpha1 = np.where(participates, params.alpha0 + 0.5 * omegas * margin, params.alpha0)

    g_share = (params.eps * omegas + delta * (1.0 - omegas)) * alpha1
    penalty = np.where(omegas < reg.theta, reg.penalty, 0.0)
    g_cost = params.alpha0 * omegas + params.c_omega * alpha1 * (1.0 - omegas) + penalty
    u_g = g_share - g_cost

    d = alpha1 - params.alpha0
    d_share = (1.0 - delta * (1.0 - omegas)) * alpha1
    u_d = np.where(participates, d_share - (d * d / omegas + params.c_omega * alpha1 * omegas), 0.0)

    best = float(np.max(u_g))
    if best < 0.0:
        return StrategyProfile(delta=delta, omega=None, alpha1=None), 0.0, 0.0
    idx = int(np.max(np.nonzero(u_g >= best - params.tol)[0]))  # tie -> larger omega
    omega_star = float(omegas[idx])
    alpha1_star = float(alpha1[idx]) if participates[idx] else None
    return (
        StrategyProfile(delta=delta, omega=omega_star, alpha1=alpha1_star),
        float(u_g[idx]),
        float(u_d[idx]),
    )
