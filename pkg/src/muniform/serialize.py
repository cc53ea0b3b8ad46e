"""Canonical on-disk formats: result JSON documents and bench CSV.

Identical config and seed must yield byte-identical files, so every
writer here routes through one canonical JSON encoding (sorted keys,
fixed separators, repr floats) and timing data stays out of documents
unless explicitly requested. Formats are documented in docs/schemas.md.
"""

from __future__ import annotations

import io
import json

import numpy as np

from .errors import InvalidInput

__all__ = [
    "SCHEMA_VERSION",
    "to_jsonable",
    "result_document",
    "dumps_document",
    "write_bench_csv",
    "read_bench_csv",
]

SCHEMA_VERSION = 1

CSV_HEADER = ["t", "p_X", "p_Y", "p_Z", "p_other",
              "stderr_X", "stderr_Y", "stderr_Z"]


def to_jsonable(obj):
    """Recursively convert numpy/complex values into plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    to_json = getattr(obj, "to_json_obj", None)
    if to_json is not None:
        return to_jsonable(to_json())
    raise InvalidInput(f"cannot serialize {type(obj).__name__}")


def result_document(command: str, config: dict, result) -> dict:
    return {
        "schema": {"name": "muniform-result", "version": SCHEMA_VERSION},
        "command": command,
        "config": to_jsonable(config),
        "result": to_jsonable(result),
    }


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _fmt(x: float) -> str:
    return repr(float(x))


def write_bench_csv(config: dict, rows) -> str:
    """Render the bench time series; rows are dicts keyed like CSV_HEADER."""
    buf = io.StringIO()
    header = {
        "schema": {"name": "muniform-bench-csv", "version": SCHEMA_VERSION},
        "config": to_jsonable(config),
    }
    buf.write("# " + json.dumps(header, sort_keys=True, allow_nan=False) + "\n")
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row[col]) for col in CSV_HEADER) + "\n")
    return buf.getvalue()


def series_to_rows(series: dict) -> list:
    """Flatten a pattern series (see noisesim.pattern_series) to CSV rows.

    Exact-engine series carry no shot noise; their stderr columns are 0.
    """
    sig = series.get("sigma")
    rows = []
    for i in range(len(series["t"])):
        rows.append({
            "t": float(series["t"][i]),
            "p_X": float(series["x"][i]),
            "p_Y": float(series["y"][i]),
            "p_Z": float(series["z"][i]),
            "p_other": float(series["other"][i]),
            "stderr_X": float(sig["x"][i]) if sig else 0.0,
            "stderr_Y": float(sig["y"][i]) if sig else 0.0,
            "stderr_Z": float(sig["z"][i]) if sig else 0.0,
        })
    return rows


def read_bench_csv(text: str):
    """Parse a bench CSV back into (config, series dict for fitting)."""
    config = None
    data_lines = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            try:
                meta = json.loads(line[1:].strip())
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"bad CSV metadata line: {exc}") from None
            config = meta.get("config")
            continue
        if header is None:
            header = line.split(",")
            if header != CSV_HEADER:
                raise InvalidInput(
                    f"unexpected CSV columns {header}, want {CSV_HEADER}"
                )
            continue
        parts = line.split(",")
        if len(parts) != len(CSV_HEADER):
            raise InvalidInput(f"malformed CSV row: {line!r}")
        try:
            data_lines.append([float(p) for p in parts])
        except ValueError:
            raise InvalidInput(f"non-numeric CSV value in row: {line!r}") from None
    if header is None or not data_lines:
        raise InvalidInput("CSV contains no data rows")
    cols = {name: np.array([row[i] for row in data_lines])
            for i, name in enumerate(CSV_HEADER)}
    series = {
        "t": cols["t"],
        "x": cols["p_X"],
        "y": cols["p_Y"],
        "z": cols["p_Z"],
        "other": cols["p_other"],
        "sigma": {
            "x": cols["stderr_X"],
            "y": cols["stderr_Y"],
            "z": cols["stderr_Z"],
        },
    }
    if np.all(series["sigma"]["x"] == 0) and np.all(series["sigma"]["z"] == 0):
        series["sigma"] = None  # exact-engine export carries no shot noise
    return config, series
