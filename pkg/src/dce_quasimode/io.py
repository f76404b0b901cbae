"""Serialization of results to CSV and JSON, with atomic file replacement."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np


def fmt(x) -> str:
    """Full double precision (17 significant digits)."""
    return format(float(x), ".17g")


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_csv(series) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    tags = list(series.values)
    writer.writerow(["t", "t_over_tau", *tags])
    t_tau = series.times_over_tau
    for i, t in enumerate(series.times):
        writer.writerow([fmt(t), fmt(t_tau[i]), *(fmt(series.values[k][i]) for k in tags)])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [float(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def series_json(series, config=None) -> str:
    doc = {
        "metadata": _jsonable(dict(series.metadata)),
        "config": _jsonable(config) if config is not None else None,
        "t": _jsonable(series.times),
        "t_over_tau": _jsonable(series.times_over_tau),
        "values": {k: _jsonable(v) for k, v in series.values.items()},
    }
    return json.dumps(doc, indent=2) + "\n"


def read_series_csv(path):
    """Load a series CSV back into (header, float array)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()
