"""Matrix file format and structured command reports.

Matrices travel as UTF-8 JSON objects

    {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}

with one [re, im] decimal pair per entry.  All floats are written with 17
significant digits, which round-trips IEEE doubles losslessly, and objects
are emitted with sorted keys so serialization is byte-deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ParseError
from .linalg import as_complex_matrix

__all__ = [
    "matrix_to_payload",
    "payload_to_matrix",
    "parse_matrix_file",
    "write_matrix_file",
    "dumps_deterministic",
    "Report",
    "format_report",
]


def _format_float(x: float) -> str:
    """17-significant-digit decimal with a guaranteed fraction part."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    text = format(float(x), ".17g")
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def _emit(obj) -> str:
    if isinstance(obj, dict):
        parts = (f"{json.dumps(str(k))}:{_emit(v)}" for k, v in sorted(obj.items()))
        return "{" + ",".join(parts) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps_deterministic(obj) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    return _emit(obj) + "\n"


def matrix_to_payload(m) -> dict:
    """Matrix as a JSON-ready dict of [re, im] pairs."""
    m = as_complex_matrix(m)
    rows, cols = m.shape
    data = [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(cols)] for i in range(rows)]
    return {"rows": rows, "cols": cols, "data": data}


def payload_to_matrix(payload) -> np.ndarray:
    """Parse the matrix dict back into a complex array.

    Raises ParseError for structural problems and DimensionMismatch when
    the data does not fill the declared rows x cols shape.
    """
    if not isinstance(payload, dict):
        raise ParseError(f"matrix payload must be an object, got {type(payload).__name__}")
    try:
        rows = int(payload["rows"])
        cols = int(payload["cols"])
        data = payload["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix payload: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ParseError(f"matrix dimensions must be positive, got {rows} x {cols}")
    if not isinstance(data, list) or len(data) != rows:
        raise DimensionMismatch(f"expected {rows} data rows, got {len(data) if isinstance(data, list) else 'non-list'}")
    out = np.zeros((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise DimensionMismatch(f"row {i} has {len(row) if isinstance(row, list) else 'non-list'} entries, expected {cols}")
        for j, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"entry ({i}, {j}) is not an [re, im] pair")
            try:
                re, im = float(entry[0]), float(entry[1])
            except (TypeError, ValueError) as exc:
                raise ParseError(f"entry ({i}, {j}) is not numeric: {exc}") from exc
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"entry ({i}, {j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def parse_matrix_file(path) -> np.ndarray:
    """Read a matrix JSON file; ParseError covers I/O and JSON failures."""
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return payload_to_matrix(payload)


def write_matrix_file(path, m) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_deterministic(matrix_to_payload(m)))


@dataclass
class Report:
    """Structured outcome of one CLI command."""

    command: str
    inputs: list = field(default_factory=list)
    verdict: str = ""
    metrics: dict = field(default_factory=dict)
    factors: dict | None = None

    def to_payload(self) -> dict:
        payload = {
            "command": self.command,
            "inputs": list(self.inputs),
            "verdict": self.verdict,
            "metrics": dict(self.metrics),
        }
        if self.factors is not None:
            payload["factors"] = dict(self.factors)
        return payload


def _format_metric(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    return str(value)


def format_report(report: Report, mode: str = "text") -> str:
    """Render a report; json mode is byte-deterministic, text is line-per-metric."""
    if mode == "json":
        return dumps_deterministic(report.to_payload())
    if mode != "text":
        raise ValueError(f"unknown report mode {mode!r}")
    lines = [f"command: {report.command}"]
    for path in report.inputs:
        lines.append(f"input: {path}")
    lines.append(f"verdict: {report.verdict}")
    for key in report.metrics:
        lines.append(f"{key} = {_format_metric(report.metrics[key])}")
    if report.factors:
        lines.append(f"factors: {', '.join(sorted(report.factors))}")
    return "\n".join(lines) + "\n"
