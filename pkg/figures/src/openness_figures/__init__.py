"""Static figure rendering for openness-eq sweep artifacts."""

from .heatmap import (
    EmptyInputError,
    FigureSpec,
    RenderResult,
    SchemaError,
    render_heatmap,
)

__version__ = "0.1.0"

__all__ = [
    "EmptyInputError",
    "FigureSpec",
    "RenderResult",
    "SchemaError",
    "render_heatmap",
]
