"""Figure rendering entry point.

Usage::

    openness-eq-render --in sweep.csv --quantity omega_star
                       [--overlay indifference.csv|pareto.csv] --out fig.png
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .heatmap import EmptyInputError, FigureSpec, SchemaError, render_heatmap


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="openness-eq-render")
    parser.add_argument("--in", dest="input_csv", type=Path, required=True)
    parser.add_argument("--quantity", required=True)
    parser.add_argument("--overlay", type=Path, default=None)
    parser.add_argument("--out", dest="output_image", type=Path, required=True)
    args = parser.parse_args(argv)

    spec = FigureSpec(
        input_csv=args.input_csv,
        quantity=args.quantity,
        output_image=args.output_image,
        overlay=args.overlay,
    )
    try:
        result = render_heatmap(spec)
    except (SchemaError, EmptyInputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    overlay = f" overlay={result.overlay_kind}({result.overlay_points})" if result.overlay_kind else ""
    print(
        f"render: {result.nx}x{result.ny} {result.x_name} x {result.y_name}"
        f"{overlay} -> {result.output_image}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
