"""Render equilibrium sweep CSVs as annotated heatmaps.

Input is the solver CLI's fixed-schema CSV (one row per grid cell, row-major
with the x axis varying fastest). The two swept parameters are detected from
the columns that actually vary; the requested quantity becomes the heatmap
color. Abstained and invalid cells have no value for most quantities and are
drawn in a reserved gray so they cannot be mistaken for low utilities.

Overlays are separate CSVs sniffed by their header: the indifference-curve
artifact (``theta,p_star_closed_form,p_star_numeric``) draws both boundary
curves, and the Pareto artifact (``penalty,theta,source``) shades the
improving cells. No equilibrium is ever recomputed here; this module only
reads what the solver wrote.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SWEEP_SCHEMA = (
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

PARAM_COLUMNS = ("penalty", "theta", "alpha0", "eps", "c_omega")
QUANTITY_COLUMNS = ("delta_star", "omega_star", "alpha1_star", "u_g", "u_d")

# omega and delta live on the release/share continuum; using one fixed scale
# keeps panels comparable across figures
UNIT_SCALE_QUANTITIES = frozenset({"omega_star", "delta_star"})

ABSTENTION_COLOR = "#5a5a5a"

INDIFFERENCE_HEADER = frozenset({"theta", "p_star_closed_form", "p_star_numeric"})
PARETO_HEADER = frozenset({"penalty", "theta", "source"})


class SchemaError(ValueError):
    """The input CSV does not carry the columns or shape this renderer needs."""


class EmptyInputError(ValueError):
    """The input CSV has no data rows."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure: a sweep CSV, the column to color by, and an output path."""

    input_csv: Path
    quantity: str
    output_image: Path
    overlay: Path | None = None


@dataclass(frozen=True)
class RenderResult:
    """What was drawn, for callers and tests that assert on figure content."""

    output_image: Path
    x_name: str
    y_name: str
    nx: int
    ny: int
    abstention_cells: int
    overlay_kind: str | None
    overlay_points: int


def _read_rows(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyInputError(f"{path} is empty")
        missing = [c for c in SWEEP_SCHEMA if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{path} lacks required columns: {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise EmptyInputError(f"{path} has a header but no rows")
    return rows


def _detect_axes(rows: list[dict[str, str]]) -> tuple[str, str]:
    varying = [c for c in PARAM_COLUMNS if len({r[c] for r in rows}) > 1]
    if len(varying) != 2:
        raise SchemaError(
            f"expected exactly two swept parameters, found {varying or 'none'}"
        )
    a, b = varying
    # row-major output: the x axis changes between consecutive rows
    if rows[0][a] != rows[1][a]:
        return a, b
    return b, a


def _sniff_overlay(path: Path) -> tuple[str, list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = set(reader.fieldnames or ())
        rows = list(reader)
    if INDIFFERENCE_HEADER <= fields:
        return "indifference", rows
    if PARETO_HEADER <= fields:
        return "pareto", rows
    raise SchemaError(f"unrecognized overlay header in {path}: {sorted(fields)}")


def _draw_overlay(ax, kind: str, rows: list[dict[str, str]], x_name: str, y_name: str) -> int:
    if {x_name, y_name} != {"penalty", "theta"}:
        raise SchemaError("overlays apply only to (penalty, theta) sweeps")
    # canonical orientation: penalty on x, theta on y
    def point(p: str, t: str) -> tuple[float, float]:
        return (float(p), float(t)) if x_name == "penalty" else (float(t), float(p))

    if kind == "indifference":
        drawn = 0
        for column, style, label in (
            ("p_star_numeric", "-", "compliance boundary (endogenous)"),
            ("p_star_closed_form", "--", "indifference curve (fixed share)"),
        ):
            pts = [point(r[column], r["theta"]) for r in rows if r[column] != ""]
            if pts:
                xs, ys = zip(*sorted(pts, key=lambda q: q[1]))
                ax.plot(xs, ys, style, color="white", linewidth=1.6, label=label)
                drawn += len(pts)
        if drawn:
            ax.legend(loc="upper right", fontsize=7, framealpha=0.4)
        return drawn

    pts = [point(r["penalty"], r["theta"]) for r in rows if r["source"] == "pareto_improving"]
    if pts:
        xs, ys = zip(*pts)
        ax.scatter(
            xs,
            ys,
            marker="s",
            s=36,
            c="white",
            alpha=0.45,
            edgecolors="none",
            label="Pareto-improving",
        )
        ax.legend(loc="upper right", fontsize=7, framealpha=0.4)
    return len(pts)


def render_heatmap(spec: FigureSpec) -> RenderResult:
    """Draw one heatmap (plus optional overlay) and write the image file."""
    if spec.quantity not in QUANTITY_COLUMNS:
        raise SchemaError(
            f"unknown quantity {spec.quantity!r}; choose from {QUANTITY_COLUMNS}"
        )
    rows = _read_rows(spec.input_csv)
    x_name, y_name = _detect_axes(rows)

    xs = sorted({float(r[x_name]) for r in rows})
    ys = sorted({float(r[y_name]) for r in rows})
    x_index = {v: i for i, v in enumerate(xs)}
    y_index = {v: i for i, v in enumerate(ys)}
    grid = np.full((len(ys), len(xs)), np.nan)
    abstentions = 0
    for r in rows:
        ix = x_index[float(r[x_name])]
        iy = y_index[float(r[y_name])]
        text = r[spec.quantity]
        if r["region"] in ("G_ABSTAIN", "D_ABSTAIN", "INVALID") or text == "":
            abstentions += 1
            continue
        grid[iy, ix] = float(text)

    masked = np.ma.masked_invalid(grid)
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad(ABSTENTION_COLOR)
    if spec.quantity in UNIT_SCALE_QUANTITIES:
        vmin, vmax = 0.0, 1.0
    else:
        vmin = float(masked.min()) if masked.count() else 0.0
        vmax = float(masked.max()) if masked.count() else 1.0

    fig, ax = plt.subplots(figsize=(6.0, 4.6))
    mesh = ax.pcolormesh(xs, ys, masked, cmap=cmap, vmin=vmin, vmax=vmax, shading="nearest")
    fig.colorbar(mesh, ax=ax, label=spec.quantity)
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
    ax.set_title(spec.quantity)

    overlay_kind = None
    overlay_points = 0
    if spec.overlay is not None:
        overlay_kind, overlay_rows = _sniff_overlay(spec.overlay)
        overlay_points = _draw_overlay(ax, overlay_kind, overlay_rows, x_name, y_name)

    fig.savefig(spec.output_image, dpi=130)
    plt.close(fig)
    return RenderResult(
        output_image=spec.output_image,
        x_name=x_name,
        y_name=y_name,
        nx=len(xs),
        ny=len(ys),
        abstention_cells=abstentions,
        overlay_kind=overlay_kind,
        overlay_points=overlay_points,
    )
