"""
Named, reproducible studies driven by JSON configurations.
"""

from .config import (
    EXPERIMENTS, DomainSpec, NonlinearitySpec, Tolerances, ExperimentConfig, parse_config, load_config,
)
from .plotting import PlotStyle, PlotSpec, emit_plot
from .results import Check, Table, StudyResult, percentiles
from .studies import STUDIES, map_resolutions
from .runner import RunManifest, render_csv, run_experiment

__all__ = [
    'EXPERIMENTS', 'DomainSpec', 'NonlinearitySpec', 'Tolerances', 'ExperimentConfig', 'parse_config', 'load_config',
    'PlotStyle', 'PlotSpec', 'emit_plot',
    'Check', 'Table', 'StudyResult', 'percentiles',
    'STUDIES', 'map_resolutions',
    'RunManifest', 'render_csv', 'run_experiment',
]
