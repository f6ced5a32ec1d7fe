"""
Deterministic SVG line plots.
"""

import io
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

import matplotlib
matplotlib.use("Agg")
from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from fraclab.error import PlotError

Series = Mapping[str, Tuple[Sequence[float], Sequence[float]]]

_RC = {
    "svg.hashsalt": "fraclab",
    "svg.fonttype": "none",
    "path.simplify": False,
}


@dataclass(frozen=True)
class PlotStyle:
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    logx: bool = False
    logy: bool = False
    markers: bool = True
    size: Tuple[float, float] = (6.0, 4.0)


@dataclass(frozen=True)
class PlotSpec:
    """Series plus style, as produced by a study."""
    series: Dict[str, Tuple[list, list]]
    style: PlotStyle = field(default_factory=PlotStyle)


def _validate(series: Series) -> None:
    if not series:
        raise PlotError("no series to plot")
    for label, (x, y) in series.items():
        if len(x) == 0:
            raise PlotError(f"series '{label}' is empty")
        if len(x) != len(y):
            raise PlotError(f"series '{label}' is ragged: {len(x)} x values, {len(y)} y values")


def emit_plot(series: Series, style: PlotStyle = PlotStyle()) -> str:
    """
    Render labeled series as a standalone SVG document.

    The output is byte-identical for identical input: element ids are salted
    with a fixed string and no date is written.

    Raises:
        PlotError: If there are no series or a series is empty or ragged.
    """
    _validate(series)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=style.size)
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        for label, (x, y) in series.items():
            marker = "o" if style.markers or len(x) == 1 else None
            ax.plot(list(x), list(y), marker=marker, label=label)
        if style.logx:
            ax.set_xscale("log")
        if style.logy:
            ax.set_yscale("log")
        ax.set_title(style.title)
        ax.set_xlabel(style.xlabel)
        ax.set_ylabel(style.ylabel)
        ax.grid(True, which="both", linewidth=0.3)
        ax.legend()
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
