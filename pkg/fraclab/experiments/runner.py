"""
Runs a study and writes its artifacts: one CSV per table, one SVG per plot,
one JSON per document, ``summary.json`` and finally ``manifest.json``.
"""

import csv
import hashlib
import io
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from fraclab.error import FraclabError
from fraclab.experiments.config import ExperimentConfig
from fraclab.experiments.plotting import emit_plot
from fraclab.experiments.results import Check, StudyResult, Table
from fraclab.experiments.studies import STUDIES

logger = logging.getLogger(__name__)

MANIFEST_SCHEMA = 1


@dataclass
class RunManifest:
    """
    Record of one run. Artifact hashes depend only on config and seed;
    stage timings are wall-clock and vary between runs.
    """
    config: Dict[str, Any]
    out_dir: Path
    artifacts: List[Dict[str, str]] = field(default_factory=list)
    stages: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failed_checks(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "schema": MANIFEST_SCHEMA,
            "config": self.config,
            "artifacts": self.artifacts,
            "stages": self.stages,
            "checks": [c.to_json() for c in self.checks],
            "passed": self.passed,
        }


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(table: Table) -> str:
    """RFC-4180 text: CRLF line ends, quoting only where needed."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(row.get(col, "")) for col in table.columns])
    return buf.getvalue()


def _dump(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


class _ManifestWriter:
    """Single writer for every artifact of a run; records each file's hash."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        manifest.out_dir.mkdir(parents=True, exist_ok=True)

    def write(self, name: str, text: str) -> None:
        data = text.encode("utf-8")
        (self.manifest.out_dir / name).write_bytes(data)
        self.manifest.artifacts.append({"path": name, "sha256": hashlib.sha256(data).hexdigest()})
        logger.debug(f"Wrote {name} ({len(data)} bytes)")

    def close(self) -> None:
        self.write("manifest.json", _dump(self.manifest.to_json()))


class _Stage:
    def __init__(self, manifest: RunManifest, name: str):
        self.manifest, self.name = manifest, name

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        seconds = time.perf_counter() - self.start
        self.manifest.stages.append({"name": self.name, "seconds": round(seconds, 6)})
        logger.info(f"Stage {self.name} took {seconds:.2f}s")
        return False


def write_artifacts(result: StudyResult, writer: _ManifestWriter) -> None:
    for name, table in sorted(result.tables.items()):
        writer.write(f"{name}.csv", render_csv(table))
    for name, plot in sorted(result.plots.items()):
        writer.write(f"{name}.svg", emit_plot(plot.series, plot.style))
    for name, document in sorted(result.documents.items()):
        writer.write(f"{name}.json", _dump(document))
    writer.write("summary.json", _dump({
        "summary": result.summary,
        "checks": [c.to_json() for c in result.checks],
        "passed": result.passed,
    }))


def run_experiment(config: ExperimentConfig, out_dir: Optional[Union[str, Path]] = None) -> RunManifest:
    """
    Run the configured study and write its artifacts.

    Args:
        config: A validated configuration.
        out_dir: Target directory; defaults to ``<output_dir>/<experiment>``.

    Returns:
        The manifest, also written to ``manifest.json``.

    Raises:
        FraclabError: A module-level failure the study could not turn into a
            failed check; the message names the experiment.
    """
    target = Path(out_dir) if out_dir is not None else Path(config.output_dir) / config.experiment
    manifest = RunManifest(config=config.model_dump(mode="json"), out_dir=target)
    logger.info(f"Running {config.experiment} at resolutions {config.resolutions} into {target}")
    study = STUDIES[config.experiment]
    with _Stage(manifest, "study"):
        try:
            result = study(config)
        except FraclabError as exc:
            logger.error(f"Experiment {config.experiment} failed: {exc}", exc_info=True)
            raise type(exc)(f"{config.experiment}: {exc}") from exc
    manifest.checks = list(result.checks)
    writer = _ManifestWriter(manifest)
    with _Stage(manifest, "write"):
        write_artifacts(result, writer)
    writer.close()
    for check in manifest.failed_checks:
        logger.warning(f"Check {check.name} failed: {check.detail}")
    logger.info(f"{config.experiment}: {'passed' if manifest.passed else 'FAILED'} "
                f"({len(manifest.checks) - len(manifest.failed_checks)}/{len(manifest.checks)} checks)")
    return manifest
