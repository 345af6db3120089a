"""Report writers for JSON, CSV and fixed-width tables.

Numbers in CSV and tables use 17 significant digits; JSON relies on the
shortest round-trip representation, which is equally lossless.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Optional

import numpy as np


def fmt_num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x) + 0.0, ".17g")
    return str(x)


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def render_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False) + "\n"


def render_csv(rows: list, columns: list, meta: Optional[dict] = None) -> str:
    buf = io.StringIO()
    for key, value in (meta or {}).items():
        buf.write(f"# {key} = {_meta_value(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_num(row.get(col)) for col in columns])
    return buf.getvalue()


def render_table(rows: list, columns: list, meta: Optional[dict] = None) -> str:
    cells = [[fmt_num(row.get(col)) for col in columns] for row in rows]
    widths = [max([len(col)] + [len(r[i]) for r in cells]) for i, col in enumerate(columns)]
    lines = [f"{key}: {_meta_value(value)}" for key, value in (meta or {}).items()]
    lines.append("  ".join(col.rjust(w) for col, w in zip(columns, widths)))
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)
    return "\n".join(lines) + "\n"


def _meta_value(value) -> str:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(jsonable(value), sort_keys=False)
    return fmt_num(value)


def flatten_vectors(record: dict) -> dict:
    """Split 3-vector entries into name1, name2, name3 columns."""
    out = {}
    for key, value in record.items():
        if isinstance(value, (list, tuple, np.ndarray)) and len(value) == 3 and not isinstance(value, str):
            for i, v in enumerate(value, start=1):
                out[f"{key}{i}"] = v
        elif value is None and key in ("E2", "E3"):
            for i in (1, 2, 3):
                out[f"{key}{i}"] = None
        else:
            out[key] = value
    return out


def render(fmt: str, payload: dict, rows: list, columns: list, meta: dict) -> str:
    if fmt == "json":
        return render_json(payload)
    if fmt == "csv":
        return render_csv(rows, columns, meta)
    return render_table(rows, columns, meta)
