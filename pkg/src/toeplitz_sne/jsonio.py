"""JSON file formats.

Matrix:  ``{"kind": "toeplitz" | "hankel", "col": [...], "row": [...]}``
         (for Hankel, ``row`` is the last row).
Vector:  a JSON array, or ``{"b": [...]}``.
R:       ``{"n": n, "rows": [[r11, ..., r1n], [r22, ...], ...]}``
Log:     ``{"order": [...], "variant": ..., "rotations": [[c, s, kind], ...],
          "last_column": [...]}``

Floats are written with Python's shortest round-trip repr.
"""

import json
import math

import numpy as np

from .toeplitz_core import HankelSpec, ToeplitzSpec, build_hankel, build_toeplitz


def _floats(v):
    return [float(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def matrix_to_dict(M):
    if isinstance(M, HankelSpec):
        return {"kind": "hankel", "col": _floats(M.col), "row": _floats(M.row)}
    if isinstance(M, ToeplitzSpec):
        return {"kind": "toeplitz", "col": _floats(M.col), "row": _floats(M.row)}
    raise TypeError(f"not a structured matrix: {type(M).__name__}")


def matrix_from_dict(d, force_hankel=False):
    kind = "hankel" if force_hankel else d.get("kind", "toeplitz")
    if kind == "toeplitz":
        return build_toeplitz(d["col"], d["row"])
    if kind == "hankel":
        return build_hankel(d["col"], d["row"])
    raise ValueError(f"unknown matrix kind {kind!r}")


def vector_from_json(obj):
    if isinstance(obj, dict):
        obj = obj.get("b", obj.get("x"))
    return np.array(obj, dtype=float)


def rfactor_to_dict(F):
    R = F.dense()
    return {"n": int(F.n), "rows": [_floats(R[k, k:]) for k in range(F.n)]}


def rfactor_rows_from_dict(d):
    n = int(d["n"])
    R = np.zeros((n, n))
    for k, row in enumerate(d["rows"]):
        R[k, k:] = row
    return R


def log_to_dict(log):
    rots = [[float(log.c[k, i]), float(log.s[k, i]), log.kind(log.order[i]).value]
            for k in range(log.n - 1) for i in range(3)]
    return {"order": list(log.order), "variant": log.variant,
            "rotations": rots, "last_column": _floats(log.last_column)}


def dumps(obj):
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        return v

    return json.dumps(clean(obj))


def load(path):
    with open(path) as fh:
        return json.load(fh)
