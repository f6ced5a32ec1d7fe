"""
Unit tests for the SVG emitter.
"""

import pytest

from fraclab.error import PlotError
from fraclab.experiments import PlotStyle, emit_plot


def test_single_point_series():
    svg = emit_plot({"one": ([1.0], [2.0])})
    assert svg.lstrip().startswith("<?xml")
    assert "</svg>" in svg


def test_byte_identical_runs():
    series = {"ladder": ([0, 1, 2, 3], [3, 7, 15, 31])}
    style = PlotStyle(title="ladder", logy=True)
    assert emit_plot(series, style) == emit_plot(series, style)


def test_labels_in_output():
    svg = emit_plot({"center error": ([1, 2], [0.1, 0.05])}, PlotStyle(xlabel="h", ylabel="error"))
    assert "center error" in svg


@pytest.mark.parametrize("series", [{}, {"empty": ([], [])}, {"ragged": ([1, 2], [1])}])
def test_rejects_bad_series(series):
    with pytest.raises(PlotError):
        emit_plot(series)
