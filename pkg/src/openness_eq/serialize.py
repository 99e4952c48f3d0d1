"""Canonical CSV/JSON serialization for equilibrium records.

Every numeric field is written as its shortest decimal within 12 significant
digits (``format(x, ".12g")``), which keeps artifacts diff-friendly and
platform-independent; identical inputs always serialize to identical bytes.
Readers parse those decimals back, so write -> read -> write is
byte-idempotent.

Equilibrium tables share one fixed schema (:data:`SCHEMA`). Abstentions leave
``omega_star``/``alpha1_star`` empty and put the abstain tag in ``region``;
sweep cells whose parameter combination was out of domain keep their swept
values but carry the ``INVALID`` region marker.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

from .bargaining import BargainingRule
from .core_model import Equilibrium, GameParams, Regulation
from .regulation_analysis import SweepTable

SCHEMA = (
    "alpha0",
    "eps",
    "c_omega",
    "theta",
    "penalty",
    "rule",
    "delta_star",
    "omega_star",
    "alpha1_star",
    "u_g",
    "u_d",
    "region",
)

_STRING_FIELDS = frozenset({"rule", "region", "source"})

INVALID_REGION = "INVALID"

INDIFFERENCE_SCHEMA = ("theta", "p_star_closed_form", "p_star_numeric")
PARETO_SCHEMA = ("penalty", "theta", "source")


def fmt(value: float | None) -> str:
    """Canonical decimal text for a float; empty for missing values."""
    if value is None:
        return ""
    return format(value, ".12g")


def canonical(value: float | None) -> float | None:
    """The float actually denoted by the canonical decimal text."""
    if value is None:
        return None
    return float(fmt(value))


def equilibrium_row(
    params: GameParams, reg: Regulation, rule: BargainingRule, eq: Equilibrium
) -> dict[str, str]:
    """One schema row for a solved equilibrium."""
    profile = eq.profile
    return {
        "alpha0": fmt(params.alpha0),
        "eps": fmt(params.eps),
        "c_omega": fmt(params.c_omega),
        "theta": fmt(reg.theta),
        "penalty": fmt(reg.penalty),
        "rule": rule.value,
        "delta_star": fmt(profile.delta),
        "omega_star": fmt(profile.omega),
        "alpha1_star": fmt(profile.alpha1),
        "u_g": fmt(eq.u_g),
        "u_d": fmt(eq.u_d),
        "region": eq.region.value if eq.region is not None else "",
    }


def sweep_rows(table: SweepTable) -> list[dict[str, str]]:
    """Schema rows for every cell, in the table's row-major order."""
    rows = []
    spec = table.spec
    for cell in table.cells:
        if cell.eq is not None:
            rows.append(equilibrium_row(cell.params, cell.reg, spec.rule, cell.eq))
        else:
            row = dict.fromkeys(SCHEMA, "")
            row["rule"] = spec.rule.value
            row["region"] = INVALID_REGION
            # Axis values are known even when the combination was rejected.
            fixed = {
                "alpha0": spec.params.alpha0,
                "eps": spec.params.eps,
                "c_omega": spec.params.c_omega,
                "theta": spec.reg.theta,
                "penalty": spec.reg.penalty,
            }
            fixed[spec.x.name] = cell.x
            fixed[spec.y.name] = cell.y
            for key, value in fixed.items():
                row[key] = fmt(value)
            rows.append(row)
    return rows


def write_csv(path: str | Path, header: tuple[str, ...], rows: list[dict[str, str]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def read_csv(path: str | Path) -> list[dict[str, Any]]:
    """Parse an artifact CSV back into typed rows ('' -> None, numerics -> float)."""
    out: list[dict[str, Any]] = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row: dict[str, Any] = {}
            for key, text in raw.items():
                if key in _STRING_FIELDS:
                    row[key] = text
                else:
                    row[key] = float(text) if text != "" else None
            out.append(row)
    return out


def rows_to_json_objects(header: tuple[str, ...], rows: list[dict[str, str]]) -> list[dict[str, Any]]:
    """Mirror CSV rows as JSON objects with real numbers and nulls."""
    objects = []
    for row in rows:
        obj: dict[str, Any] = {}
        for key in header:
            text = row[key]
            if key in _STRING_FIELDS:
                obj[key] = text
            else:
                obj[key] = float(text) if text != "" else None
        objects.append(obj)
    return objects


def write_json(
    path: str | Path,
    envelope: dict[str, Any],
    header: tuple[str, ...],
    rows: list[dict[str, str]],
) -> None:
    payload = {"spec": envelope, "rows": rows_to_json_objects(header, rows)}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def params_envelope(params: GameParams, reg: Regulation, rule: BargainingRule) -> dict[str, Any]:
    return {
        "alpha0": canonical(params.alpha0),
        "eps": canonical(params.eps),
        "c_omega": canonical(params.c_omega),
        "omega_min": canonical(params.omega_min),
        "delta_step": canonical(params.delta_step),
        "tol": canonical(params.tol),
        "theta": canonical(reg.theta),
        "penalty": canonical(reg.penalty),
        "rule": rule.value,
    }
