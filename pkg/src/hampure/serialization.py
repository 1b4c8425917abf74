"""JSON schemas used by the command line and for on-disk bundles.

Matrix format (repo-wide): ``{"rows": n, "cols": n, "data": [[re, im], ...]}``
with row-major data; NaN and infinities are rejected on read.

Purification bundles: ``{"d", "d_E", "placement", "method", "inputs",
"extended", "tol"}`` where the tolerance records the verification level the
bundle was written at.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .constructions import Purification
from .linalg import HermitianOperator, ProjectionConvention, as_matrix


def matrix_to_obj(m) -> dict:
    a = as_matrix(m)
    n = a.shape[0]
    data = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": n, "cols": n, "data": data}


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix object must be a JSON object")
    missing = {"rows", "cols", "data"} - set(obj)
    if missing:
        raise ValueError(f"matrix object is missing keys: {sorted(missing)}")
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or rows != cols:
        raise ValueError(f"matrix must be square with positive size, got {rows}x{cols}")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(f"matrix data must hold {rows * cols} [re, im] pairs")
    out = np.empty(rows * cols, dtype=complex)
    for k, entry in enumerate(data):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValueError("each matrix entry must be an [re, im] pair")
        re, im = entry
        if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in (re, im)):
            raise ValueError("matrix entries must be finite numbers")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def operators_to_obj(mats) -> dict:
    return {"operators": [matrix_to_obj(m) for m in mats]}


def operators_from_obj(obj) -> list[np.ndarray]:
    if not isinstance(obj, dict) or "operators" not in obj:
        raise ValueError('expected an object with an "operators" list')
    ops = obj["operators"]
    if not isinstance(ops, list) or not ops:
        raise ValueError('"operators" must be a non-empty list')
    return [matrix_from_obj(o) for o in ops]


def purification_to_obj(p: Purification, tol: float) -> dict:
    return {
        "d": p.d,
        "d_E": p.d_E,
        "placement": p.convention.placement,
        "method": p.method,
        "tol": float(tol),
        "inputs": [matrix_to_obj(h) for h in p.inputs],
        "extended": [matrix_to_obj(h) for h in p.extended],
    }


def purification_from_obj(obj) -> tuple[Purification, float | None]:
    """Parse a bundle, tolerating the CLI report envelope around it."""
    if isinstance(obj, dict) and "purification" in obj and "extended" not in obj:
        obj = obj["purification"]
    if not isinstance(obj, dict):
        raise ValueError("purification must be a JSON object")
    missing = {"d", "d_E", "placement", "method", "inputs", "extended"} - set(obj)
    if missing:
        raise ValueError(f"purification is missing keys: {sorted(missing)}")
    conv = ProjectionConvention(obj["d"], obj["d_E"], obj["placement"])
    p = Purification(
        inputs=tuple(HermitianOperator(matrix_from_obj(o)) for o in obj["inputs"]),
        extended=tuple(HermitianOperator(matrix_from_obj(o)) for o in obj["extended"]),
        convention=conv,
        method=obj["method"],
    )
    tol = obj.get("tol")
    if tol is not None:
        tol = float(tol)
        if not math.isfinite(tol) or tol <= 0:
            raise ValueError("recorded tolerance must be a positive finite number")
    return p, tol


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
