"""JSON file formats and deterministic report output."""
from __future__ import annotations

import json
import math
import re

import numpy as np

from .errors import SchemaError, StructuralError
from .modular import ModularData
from .ring import FusionRing

SCHEMA_VERSION = 1
RING_FIELDS = {"schema_version", "rank", "labels", "dual", "N"}
MODULAR_FIELDS = {"schema_version", "rank", "labels", "dual", "S", "T"}


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object", line=1)
    return data


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _common(data: dict, text: str, allowed: set, required: set) -> None:
    def fail(msg, key):
        raise SchemaError(msg, field=key, line=_line_of(text, key))

    unknown = sorted(set(data) - allowed)
    if unknown:
        fail("unknown field", unknown[0])
    for key in sorted(required):
        if key not in data:
            raise SchemaError("missing required field", field=key)
    if data["schema_version"] != SCHEMA_VERSION:
        fail(f"unsupported schema_version {data['schema_version']!r}", "schema_version")
    if not _is_int(data["rank"]) or data["rank"] < 1:
        fail("rank must be a positive integer", "rank")
    r = data["rank"]
    dual = data["dual"]
    if not isinstance(dual, list) or len(dual) != r or not all(_is_int(x) for x in dual):
        fail(f"dual must be a list of {r} integers", "dual")
    if "labels" in data:
        labels = data["labels"]
        if not isinstance(labels, list) or len(labels) != r or not all(isinstance(s, str) for s in labels):
            fail(f"labels must be a list of {r} strings", "labels")


def ring_from_dict(data: dict, text: str = "") -> FusionRing:
    _common(data, text, RING_FIELDS, {"schema_version", "rank", "dual", "N"})
    N = {}
    entries = data["N"]
    if not isinstance(entries, list):
        raise SchemaError("N must be a list of [i, j, k, value]", field="N", line=_line_of(text, "N"))
    for n, q in enumerate(entries):
        if not isinstance(q, list) or len(q) != 4 or not all(_is_int(x) for x in q):
            raise SchemaError("expected [i, j, k, value] integers", field=f"N[{n}]",
                              line=_line_of(text, "N"))
        key = tuple(q[:3])
        if key in N:
            raise SchemaError(f"duplicate entry for {list(key)}", field=f"N[{n}]")
        N[key] = q[3]
    try:
        return FusionRing(data["rank"], tuple(data["dual"]), N, data.get("labels"))
    except StructuralError as exc:
        raise SchemaError(str(exc), field="N") from None


def _complex_list(value, n, field, text):
    if not isinstance(value, list) or len(value) != n:
        raise SchemaError(f"expected {n} [re, im] pairs", field=field, line=_line_of(text, field.split("[")[0]))
    out = []
    for m, z in enumerate(value):
        if not isinstance(z, list) or len(z) != 2 or not all(_is_num(x) for x in z):
            raise SchemaError("expected [re, im]", field=f"{field}[{m}]",
                              line=_line_of(text, field.split("[")[0]))
        out.append(complex(z[0], z[1]))
    return out


def modular_from_dict(data: dict, text: str = "") -> ModularData:
    _common(data, text, MODULAR_FIELDS, {"schema_version", "rank", "dual", "S", "T"})
    r = data["rank"]
    S = data["S"]
    if not isinstance(S, list) or len(S) != r:
        raise SchemaError(f"S must have {r} rows (square)", field="S", line=_line_of(text, "S"))
    rows = [_complex_list(row, r, f"S[{n}]", text) for n, row in enumerate(S)]
    T = _complex_list(data["T"], r, "T", text)
    return ModularData(np.array(rows), np.array(T), tuple(data["dual"]), data.get("labels"))


def is_modular_dict(data: dict) -> bool:
    return "S" in data


def parse_ring(source) -> FusionRing:
    text = _read(source)
    return ring_from_dict(_load(text), text)


def parse_modular(source) -> ModularData:
    text = _read(source)
    return modular_from_dict(_load(text), text)


def parse_any(source) -> FusionRing | ModularData:
    text = _read(source)
    data = _load(text)
    if is_modular_dict(data):
        return modular_from_dict(data, text)
    return ring_from_dict(data, text)


def _read(source) -> str:
    if hasattr(source, "read"):
        text = source.read()
        return text.decode() if isinstance(text, bytes) else text
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def ring_to_dict(ring: FusionRing) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "rank": ring.rank,
        "labels": list(ring.labels),
        "dual": list(ring.dual),
        "N": [[i, j, k, v] for (i, j, k), v in ring.N.items()],
    }


def modular_to_dict(md: ModularData) -> dict:
    def pair(z):
        return [float(z.real), float(z.imag)]
    return {
        "schema_version": SCHEMA_VERSION,
        "rank": md.rank,
        "labels": list(md.labels),
        "dual": list(md.dual),
        "S": [[pair(z) for z in row] for row in md.S],
        "T": [pair(z) for z in md.T],
    }


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _scalar(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _is_flat(seq) -> bool:
    return all(not isinstance(x, (dict, list, tuple)) for x in seq)


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: sorted keys, floats with 17 significant digits,
    scalar-only lists kept on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
        if not seq:
            return "[]"
        if _is_flat(seq):
            return "[" + ", ".join(_scalar(x) for x in seq) + "]"
        items = [pad + dumps(x, indent, _level + 1) for x in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _scalar(obj)


def emit_ring(ring: FusionRing) -> bytes:
    return (dumps(ring_to_dict(ring)) + "\n").encode()


def emit_modular(md: ModularData) -> bytes:
    return (dumps(modular_to_dict(md)) + "\n").encode()


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (dumps(report) + "\n").encode()
    if fmt == "text":
        return (format_text(report) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(v[k])}" for k in sorted(v)) + "}"
    return str(v)


def format_text(report: dict, _level: int = 0) -> str:
    """Indented key: value summary of a report."""
    lines = []
    pad = "  " * _level
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict) and value and _level < 2:
            lines.append(f"{pad}{key}:")
            lines.append(format_text(value, _level + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict) and _level < 2:
            lines.append(f"{pad}{key}: ({len(value)} rows)")
            for row in value:
                lines.append(f"{pad}  - {_short(row)}")
        else:
            lines.append(f"{pad}{key}: {_short(value)}")
    return "\n".join(lines)
