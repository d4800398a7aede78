"""JSON formats for polytopes, meshes and flux problems.

Output floats are written with 17 significant digits, which round-trips every
double exactly; non-finite values use the ``Infinity``/``NaN`` tokens that
Python's ``json`` module reads back.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .polytope import HPolytope, from_simplex


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _emit(obj, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for n, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for n, v in enumerate(obj):
                _emit(v, indent, level + 1, out)
                if n < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for n, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: top-level JSON value must be an object")
    return data


def _matrix(value, name: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"'{name}' must be numeric") from exc
    return arr


def polytope_from_dict(data: dict) -> HPolytope:
    """Polytope from ``{"normals", "offsets"}`` or ``{"simplex_vertices"}``."""
    if not isinstance(data, dict):
        raise ValidationError("polytope must be a JSON object")
    dim = data.get("dim")
    if "simplex_vertices" in data:
        V = _matrix(data["simplex_vertices"], "simplex_vertices")
        P = from_simplex(V)
    elif "normals" in data and "offsets" in data:
        A = _matrix(data["normals"], "normals")
        b = _matrix(data["offsets"], "offsets")
        if A.ndim != 2 or b.ndim != 1:
            raise ValidationError("'normals' must be a list of rows and 'offsets' a flat list")
        P = HPolytope(A, b)
    else:
        raise ValidationError("polytope needs 'normals' and 'offsets', or 'simplex_vertices'")
    if dim is not None and dim != P.dim:
        raise ValidationError(f"declared dim {dim} but rows have length {P.dim}")
    return P


def polytope_to_dict(P: HPolytope) -> dict:
    return {"dim": P.dim, "normals": P.normals, "offsets": P.offsets}


def load_polytope(path) -> HPolytope:
    return polytope_from_dict(read_json(path))


def load_mesh(path) -> list[dict]:
    data = read_json(path)
    cells = data.get("cells")
    if not isinstance(cells, list):
        raise ValidationError("mesh needs a 'cells' list")
    dim = data.get("dim")
    out = []
    for c in cells:
        if isinstance(c, dict) and dim is not None and "dim" not in c:
            c = dict(c, dim=dim)
        out.append(c)
    return out

