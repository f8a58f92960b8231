"""JSON system files (schema version "1") and bundled fixtures.

A system file stores row-major flat arrays::

    {"schema_version": "1", "n": 4, "n_u": 2, "n_y": 2,
     "a": [...16 numbers...], "b_u": [...8...], "c": [...8...],
     "label": "optional"}
"""
import json
import math
import os
import tempfile
from importlib import resources

import numpy as np

from .errors import DimensionError, QrealError
from .ssmodel import QuantumLinearSystem

__all__ = [
    "SchemaError",
    "SCHEMA_VERSION",
    "system_from_dict",
    "system_to_dict",
    "load_system",
    "dump_system",
    "fixture_path",
    "load_fixture",
    "write_atomic",
]

SCHEMA_VERSION = "1"


class SchemaError(QrealError, ValueError):
    pass


def _dim(doc, key):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"'{key}' must be an integer, got {v!r}")
    if v < 2 or v % 2:
        raise SchemaError(f"'{key}' must be even and positive, got {v}")
    return v


def _array(doc, key, rows, cols):
    v = doc.get(key)
    if not isinstance(v, list):
        raise SchemaError(f"'{key}' must be a flat list of numbers")
    if len(v) != rows * cols:
        raise SchemaError(f"'{key}' has {len(v)} entries, expected {rows}*{cols} = {rows * cols}")
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise SchemaError(f"{key}[{i}]: expected a finite number, got {x!r}")
    return np.array(v, dtype=float).reshape(rows, cols)


def system_from_dict(doc):
    """Validate a decoded system file; returns ``(system, label)``."""
    if not isinstance(doc, dict):
        raise SchemaError("system file must contain a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    n, n_u, n_y = (_dim(doc, k) for k in ("n", "n_u", "n_y"))
    a = _array(doc, "a", n, n)
    b = _array(doc, "b_u", n, n_u)
    c = _array(doc, "c", n_y, n)
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("'label' must be a string")
    try:
        sys = QuantumLinearSystem(a, b, c)
    except DimensionError as exc:
        raise SchemaError(str(exc)) from exc
    return sys, label


def system_to_dict(sys, label=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": sys.n,
        "n_u": sys.n_u,
        "n_y": sys.n_y,
        "a": [float(x) for x in sys.a.ravel()],
        "b_u": [float(x) for x in sys.b_u.ravel()],
        "c": [float(x) for x in sys.c.ravel()],
    }
    if label is not None:
        doc["label"] = label
    return doc


def load_system(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return system_from_dict(doc)


def write_atomic(path, text):
    """Write ``text`` via a temporary file in the same directory and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_system(path, sys, label=None):
    write_atomic(path, json.dumps(system_to_dict(sys, label), indent=2) + "\n")


def fixture_path(name):
    """Path of a bundled fixture, e.g. ``fixture_path("example1")``."""
    if not name.endswith(".json"):
        name += ".json"
    return str(resources.files("qreal") / "data" / name)


def load_fixture(name):
    return load_system(fixture_path(name))[0]
