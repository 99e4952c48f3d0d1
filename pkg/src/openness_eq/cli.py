"""Command-line entry point.

Usage::

    openness-eq <solve|sweep|indifference|pareto|baseline> [flags]
                [--config FILE] [--out PATH] [--format csv|json]

Commands:
    solve         One equilibrium record for the given parameters.
    sweep         Grid of equilibria over two swept axes, with region labels.
    indifference  (theta, p*) pairs from both the closed-form curve and the
                  numeric (endogenous) compliance boundary.
    pareto        Pareto-improving cells of a (penalty, theta) sweep plus the
                  weighted-scan optimal profiles.
    baseline      No-regulation equilibria over an (alpha0, eps) grid.

Flag values override config-file values; defaults fill the rest. The config
file is flat ``key = value`` text plus an optional ``[sweep]`` section::

    alpha0 = 0.1
    eps = 0.1
    c_omega = 0.01
    rule = nash

    [sweep]
    x = penalty
    x_min = 0
    x_max = 0.3
    x_steps = 101
    y = theta
    y_min = 0
    y_max = 1
    y_steps = 101

Exit codes: 0 success, 2 usage error, 3 validation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .bargaining import BargainingRule, solve_bargain
from .core_model import DomainError, GameParams, NO_REGULATION, RegionLabel, Regulation
from .regulation_analysis import (
    Axis,
    OBJECTIVE_FIELDS,
    SweepSpec,
    classify_cell,
    indifference_boundary_numeric,
    indifference_penalty,
    pareto_optimal_policies,
    run_sweep,
)
from . import serialize

COMMANDS = ("solve", "sweep", "indifference", "pareto", "baseline")


class UsageError(Exception):
    """Malformed invocation: unknown flag/key, missing command or axis."""


class ValidationError(Exception):
    """Well-formed invocation with out-of-domain values."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; produced by :func:`parse_config`."""

    command: str
    params: GameParams
    reg: Regulation
    rule: BargainingRule
    sweep: SweepSpec | None
    out: Path
    fmt: str
    theta_steps: int = 21
    p_max: float = 1.0
    weight_steps: int = 5
    objectives: tuple[str, ...] = OBJECTIVE_FIELDS


_ROOT_KEYS = {
    "alpha0",
    "eps",
    "c_omega",
    "theta",
    "penalty",
    "rule",
    "omega_min",
    "delta_step",
    "tol",
    "format",
    "out",
    "theta_steps",
    "p_max",
    "weight_steps",
    "objectives",
}
_SWEEP_KEYS = {"x", "x_min", "x_max", "x_steps", "y", "y_min", "y_max", "y_steps"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would sys.exit(2)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="openness-eq", add_help=True)
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
        p.add_argument("--alpha0", type=float, default=None)
        p.add_argument("--eps", type=float, default=None)
        p.add_argument("--c-omega", dest="c_omega", type=float, default=None)
        p.add_argument("--theta", type=float, default=None)
        p.add_argument("--penalty", type=float, default=None)
        p.add_argument("--rule", type=str, default=None)
        p.add_argument("--omega-min", dest="omega_min", type=float, default=None)
        p.add_argument("--delta-step", dest="delta_step", type=float, default=None)
        p.add_argument("--tol", type=float, default=None)
        if name in ("sweep", "pareto", "baseline"):
            p.add_argument("--x-axis", dest="x_axis", type=str, default=None)
            p.add_argument("--x-min", dest="x_min", type=float, default=None)
            p.add_argument("--x-max", dest="x_max", type=float, default=None)
            p.add_argument("--x-steps", dest="x_steps", type=int, default=None)
            p.add_argument("--y-axis", dest="y_axis", type=str, default=None)
            p.add_argument("--y-min", dest="y_min", type=float, default=None)
            p.add_argument("--y-max", dest="y_max", type=float, default=None)
            p.add_argument("--y-steps", dest="y_steps", type=int, default=None)
        if name == "indifference":
            p.add_argument("--theta-steps", dest="theta_steps", type=int, default=None)
            p.add_argument("--p-max", dest="p_max", type=float, default=None)
        if name == "pareto":
            p.add_argument("--weight-steps", dest="weight_steps", type=int, default=None)
            p.add_argument("--objectives", type=str, default=None)
    return parser


def _parse_config_text(text: str) -> tuple[dict[str, str], dict[str, str]]:
    cfg = configparser.ConfigParser()
    cfg.optionxform = str  # keys are case-sensitive
    try:
        cfg.read_string("[__root__]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config: {exc}") from None
    for section in cfg.sections():
        if section not in ("__root__", "sweep"):
            raise UsageError(f"unknown config section [{section}]")
    root = dict(cfg["__root__"])
    sweep = dict(cfg["sweep"]) if cfg.has_section("sweep") else {}
    for key in root:
        if key not in _ROOT_KEYS:
            raise UsageError(f"unknown config key {key!r}")
    for key in sweep:
        if key not in _SWEEP_KEYS:
            raise UsageError(f"unknown [sweep] config key {key!r}")
    return root, sweep


def _pick(flag_value, config: dict[str, str], key: str, convert, default):
    """Flag > config > default."""
    if flag_value is not None:
        return flag_value
    if key in config:
        try:
            return convert(config[key])
        except ValueError as exc:
            raise ValidationError(f"config key {key!r}: {exc}") from None
    return default


def parse_config(argv: list[str], config_text: str | None = None) -> RunConfig:
    """Resolve argv plus optional config text into a validated RunConfig.

    ``config_text`` takes the place of reading the ``--config`` file, which
    keeps parsing testable without touching the filesystem.
    """
    args = _build_parser().parse_args(argv)
    command = args.command

    if config_text is None and args.config is not None:
        try:
            config_text = args.config.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
    root, sweep_cfg = _parse_config_text(config_text) if config_text else ({}, {})

    def need(name: str, value) -> float:
        if value is None:
            raise UsageError(f"missing required parameter --{name.replace('_', '-')}")
        return value

    alpha0 = need("alpha0", _pick(args.alpha0, root, "alpha0", float, None))
    eps = need("eps", _pick(args.eps, root, "eps", float, None))
    c_omega = need("c_omega", _pick(args.c_omega, root, "c_omega", float, None))
    try:
        params = GameParams(
            alpha0=alpha0,
            eps=eps,
            c_omega=c_omega,
            omega_min=_pick(args.omega_min, root, "omega_min", float, 0.01),
            delta_step=_pick(args.delta_step, root, "delta_step", float, 0.01),
            tol=_pick(args.tol, root, "tol", float, 1e-9),
        )
        theta = _pick(args.theta, root, "theta", float, 0.0)
        penalty = _pick(args.penalty, root, "penalty", float, 0.0)
        if command == "baseline":
            theta, penalty = 0.0, 0.0
        reg = Regulation(theta=theta, penalty=penalty)
    except DomainError as exc:
        raise ValidationError(str(exc)) from None

    rule_text = _pick(args.rule, root, "rule", str, "nash")
    try:
        rule = BargainingRule.parse(rule_text)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    fmt = _pick(args.fmt, root, "format", str, "csv")
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format must be csv or json, got {fmt!r}")
    out = Path(_pick(args.out, root, "out", str, f"{command}.{fmt}"))

    sweep = None
    if command in ("sweep", "pareto", "baseline"):
        defaults = {}
        if command == "baseline":
            defaults = {
                "x_axis": "alpha0", "x_min": 0.05, "x_max": 2.0, "x_steps": 21,
                "y_axis": "eps", "y_min": 0.0, "y_max": 1.0, "y_steps": 21,
            }
        def axis_part(prefix: str, field: str, convert, key: str):
            value = _pick(getattr(args, f"{prefix}_{field}"), sweep_cfg, key, convert,
                          defaults.get(f"{prefix}_{field}"))
            if value is None:
                raise UsageError(f"missing sweep axis parameter --{prefix}-{field.replace('_', '-')}")
            return value

        try:
            x = Axis(
                name=axis_part("x", "axis", str, "x"),
                start=axis_part("x", "min", float, "x_min"),
                stop=axis_part("x", "max", float, "x_max"),
                steps=axis_part("x", "steps", int, "x_steps"),
            )
            y = Axis(
                name=axis_part("y", "axis", str, "y"),
                start=axis_part("y", "min", float, "y_min"),
                stop=axis_part("y", "max", float, "y_max"),
                steps=axis_part("y", "steps", int, "y_steps"),
            )
            if command == "pareto" and {x.name, y.name} != {"penalty", "theta"}:
                raise ValidationError("pareto requires axes penalty and theta")
            if command == "baseline" and {x.name, y.name} & {"penalty", "theta"}:
                raise ValidationError("baseline sweeps game constants, not regulation axes")
            sweep = SweepSpec(x=x, y=y, params=params, reg=reg, rule=rule)
        except DomainError as exc:
            raise ValidationError(str(exc)) from None

    objectives = OBJECTIVE_FIELDS
    if command == "pareto":
        text = _pick(args.objectives, root, "objectives", str, ",".join(OBJECTIVE_FIELDS))
        objectives = tuple(part.strip() for part in text.split(",") if part.strip())
        for name in objectives:
            if name not in OBJECTIVE_FIELDS:
                raise ValidationError(f"unknown objective {name!r}; choose from {OBJECTIVE_FIELDS}")

    kwargs = {}
    if command == "indifference":
        kwargs["theta_steps"] = _pick(args.theta_steps, root, "theta_steps", int, 21)
        kwargs["p_max"] = _pick(args.p_max, root, "p_max", float, 1.0)
        if kwargs["theta_steps"] < 2:
            raise ValidationError(f"theta_steps must be >= 2, got {kwargs['theta_steps']}")
        if kwargs["p_max"] <= 0:
            raise ValidationError(f"p_max must be > 0, got {kwargs['p_max']}")
    if command == "pareto":
        kwargs["weight_steps"] = _pick(args.weight_steps, root, "weight_steps", int, 5)
        if kwargs["weight_steps"] < 2:
            raise ValidationError(f"weight_steps must be >= 2, got {kwargs['weight_steps']}")

    return RunConfig(
        command=command,
        params=params,
        reg=reg,
        rule=rule,
        sweep=sweep,
        out=out,
        fmt=fmt,
        objectives=objectives,
        **kwargs,
    )


def _write(config: RunConfig, header: tuple[str, ...], rows: list[dict[str, str]]) -> None:
    if config.fmt == "csv":
        serialize.write_csv(config.out, header, rows)
    else:
        envelope = serialize.params_envelope(config.params, config.reg, config.rule)
        envelope["command"] = config.command
        if config.sweep is not None:
            envelope["sweep"] = {
                "x": {"name": config.sweep.x.name, "min": config.sweep.x.start,
                      "max": config.sweep.x.stop, "steps": config.sweep.x.steps},
                "y": {"name": config.sweep.y.name, "min": config.sweep.y.start,
                      "max": config.sweep.y.stop, "steps": config.sweep.y.steps},
            }
        serialize.write_json(config.out, envelope, header, rows)


def _run_solve(config: RunConfig) -> str:
    eq = solve_bargain(config.params, config.reg, config.rule)
    baseline = solve_bargain(config.params, NO_REGULATION, config.rule)
    eq = replace(eq, region=classify_cell(eq, config.reg, baseline))
    row = serialize.equilibrium_row(config.params, config.reg, config.rule, eq)
    _write(config, serialize.SCHEMA, [row])
    return (
        f"solve: delta*={row['delta_star']} omega*={row['omega_star'] or 'abstain'} "
        f"u_g={row['u_g']} u_d={row['u_d']} region={row['region']}"
    )


def _run_sweep(config: RunConfig) -> str:
    table = run_sweep(config.sweep)
    rows = serialize.sweep_rows(table)
    _write(config, serialize.SCHEMA, rows)
    return f"{config.command}: {len(rows)} cells over {config.sweep.x.name} x {config.sweep.y.name}"


def _run_indifference(config: RunConfig) -> str:
    baseline = solve_bargain(config.params, NO_REGULATION, config.rule)
    profile = baseline.profile
    if profile.g_abstained or profile.d_abstained:
        raise ValidationError("baseline equilibrium has no participating players")
    rows = []
    params = config.params
    for i in range(config.theta_steps):
        theta = round(i / (config.theta_steps - 1), 12)
        closed = indifference_penalty(
            theta, profile.delta, params.alpha0, profile.alpha1, params.eps, params.c_omega
        )
        numeric = indifference_boundary_numeric(params, config.rule, theta, config.p_max)
        rows.append(
            {
                "theta": serialize.fmt(theta),
                "p_star_closed_form": serialize.fmt(closed),
                "p_star_numeric": serialize.fmt(numeric),
            }
        )
    _write(config, serialize.INDIFFERENCE_SCHEMA, rows)
    return f"indifference: {len(rows)} thresholds, p_max={config.p_max}"


def _run_pareto(config: RunConfig) -> str:
    table = run_sweep(config.sweep)
    rows = []
    for cell in table.cells:
        if cell.region is RegionLabel.PARETO_IMPROVING:
            rows.append(
                {
                    "penalty": serialize.fmt(cell.reg.penalty),
                    "theta": serialize.fmt(cell.reg.theta),
                    "source": "pareto_improving",
                }
            )
    flagged = len(rows)
    for penalty, theta in sorted(pareto_optimal_policies(table, config.weight_steps, config.objectives)):
        rows.append(
            {
                "penalty": serialize.fmt(penalty),
                "theta": serialize.fmt(theta),
                "source": "def1_optimal",
            }
        )
    _write(config, serialize.PARETO_SCHEMA, rows)
    return f"pareto: {flagged} improving cells, {len(rows) - flagged} weighted optima"


def run(config: RunConfig) -> int:
    """Execute one command, write exactly one artifact, print a summary line."""
    if config.command == "solve":
        summary = _run_solve(config)
    elif config.command in ("sweep", "baseline"):
        summary = _run_sweep(config)
    elif config.command == "indifference":
        summary = _run_indifference(config)
    elif config.command == "pareto":
        summary = _run_pareto(config)
    else:  # unreachable behind parse_config
        raise UsageError(f"unknown command {config.command!r}")
    print(f"{summary} -> {config.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else argv
    try:
        config = parse_config(argv)
        return run(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(f"commands: {', '.join(COMMANDS)}", file=sys.stderr)
        return 2
    except (ValidationError, DomainError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
