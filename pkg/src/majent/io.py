"""File formats and run manifests.

Two JSON document shapes (states and point sets) plus CSV tables, each
embedding a manifest that records the command, the effective
configuration, the package version and the RNG seed.  Writers are
atomic (temp file + rename) and deterministic: floats go through
``repr`` in JSON (shortest exact round-trip) and ``%.17g`` in CSV, and
the manifest's wall-time field is written as 0 so identical inputs
yield byte-identical files; actual timing is reported on stderr by the
CLI instead.
"""
from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import asdict, dataclass, is_dataclass
from functools import lru_cache
from importlib import metadata, resources
from pathlib import Path
from typing import Any

import numpy as np

from .majorana import MajoranaPoints
from .states import BlochPoint, SymmetricState

__all__ = [
    "FileFormatError",
    "ReferenceCell",
    "package_version",
    "make_manifest",
    "render_state_json",
    "render_points_json",
    "render_csv",
    "write_text_atomic",
    "read_state_file",
    "read_points_file",
    "load_reference_table",
]

try:
    _VERSION = metadata.version("majent")
except metadata.PackageNotFoundError:  # pragma: no cover - source tree use
    _VERSION = "0+unknown"


class FileFormatError(ValueError):
    """Input file is not a valid state/points document."""


def package_version() -> str:
    return _VERSION


def make_manifest(command: str, config: Any = None, rng_seed: int | None = None) -> dict:
    """Manifest dictionary embedded in every result file.

    ``wall_time_ms`` is fixed at 0 in serialized output to keep files
    byte-deterministic; the CLI prints the real elapsed time to stderr.
    """
    if is_dataclass(config) and not isinstance(config, type):
        snapshot = asdict(config)
    elif config is None:
        snapshot = {}
    else:
        snapshot = dict(config)
    return {
        "command": command,
        "config": snapshot,
        "versions": f"majent {_VERSION}",
        "rng_seed": rng_seed,
        "wall_time_ms": 0,
    }


def _json_dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_state_json(state: SymmetricState, manifest: dict) -> str:
    amps = [[float(a.real), float(a.imag)] for a in state.amps]
    return _json_dumps(
        {"format": "state", "n": state.n, "amps": amps, "manifest": manifest}
    )


def render_points_json(points: MajoranaPoints, manifest: dict) -> str:
    pts = [[p.theta, p.phi] for p in points.points]
    return _json_dumps(
        {"format": "points", "n": points.n, "points": pts, "manifest": manifest}
    )


def render_csv(header: list[str], rows: list[list], manifest: dict) -> str:
    """CSV with the manifest on a leading comment line.

    Floats are written with 17 significant digits so every value
    round-trips exactly through text.
    """
    lines = ["# manifest: " + json.dumps(manifest, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, float):
                cells.append(f"{v:.17g}")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see
    a partially written document."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top-level JSON value must be an object")
    return doc


def read_state_file(path: str | Path) -> tuple[SymmetricState, dict]:
    """Parse a state document; returns the state and its manifest."""
    doc = _load_json(path)
    if doc.get("format") != "state":
        raise FileFormatError(f"{path}: expected format 'state', got {doc.get('format')!r}")
    try:
        n = int(doc["n"])
        raw = doc["amps"]
        amps = np.array([complex(re, im) for re, im in raw], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: malformed state document: {exc}") from exc
    if len(amps) != n + 1:
        raise FileFormatError(
            f"{path}: expected {n + 1} amplitudes for n = {n}, found {len(amps)}"
        )
    try:
        state = SymmetricState(n, amps)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    return state, doc.get("manifest", {})


_TOL_CLASSES = {"closed": 1e-9, "decimal": 1e-6, "search": 1e-4}


@dataclass(frozen=True)
class ReferenceCell:
    """One reference value with its comparison tolerance.

    ``origin`` records how the value was obtained (closed-form,
    published-decimal, published-search, or carry from the column to
    its left); the tolerance class separates exact arithmetic (1e-9)
    from printed-decimal (1e-6) and heuristic-search (1e-4) comparisons.
    """

    value: float
    origin: str
    tolerance: float


@lru_cache(maxsize=1)
def load_reference_table() -> dict[tuple[int, str], ReferenceCell]:
    """Reference entanglement values keyed by (n, column).

    Columns are ``dicke``, ``positive``, ``general``, ``upper`` for
    n = 2..12.
    """
    table: dict[tuple[int, str], ReferenceCell] = {}
    with resources.files("majent").joinpath("data/reference_values.csv").open() as fh:
        for row in csv.DictReader(fh):
            table[(int(row["n"]), row["column"])] = ReferenceCell(
                value=float(row["value"]),
                origin=row["origin"],
                tolerance=_TOL_CLASSES[row["tol_class"]],
            )
    return table


def read_points_file(path: str | Path) -> tuple[MajoranaPoints, dict]:
    """Parse a points document; returns the points and their manifest."""
    doc = _load_json(path)
    if doc.get("format") != "points":
        raise FileFormatError(
            f"{path}: expected format 'points', got {doc.get('format')!r}"
        )
    try:
        n = int(doc["n"])
        pts = tuple(BlochPoint(float(t), float(p)) for t, p in doc["points"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: malformed points document: {exc}") from exc
    try:
        points = MajoranaPoints(n, pts)
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    return points, doc.get("manifest", {})
