"""
Report serialisation
JSON with sorted keys (byte-identical across runs), CSV and text via pandas,
and gnuplot-ready column files.
"""

import json
import math
import sys
from fractions import Fraction
from typing import Dict, Optional, Sequence

import pandas as pd

from orbits.torus import OrbitRecord


def _without_nan(value):
    """NaN floats become null, recursively through dicts and lists"""
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {key: _without_nan(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_without_nan(item) for item in value]
    return value


def _jsonable(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, pd.DataFrame):
        return _without_nan(value.to_dict(orient="records"))
    if hasattr(value, "to_json"):
        return _without_nan(value.to_json())
    if hasattr(value, "item"):
        return _without_nan(value.item())
    raise TypeError(f"Not JSON serialisable: {type(value).__name__}")


def to_json_text(payload) -> str:
    return json.dumps(_without_nan(payload), default=_jsonable, sort_keys=True, indent=2, allow_nan=False) + "\n"


def records_frame(records: Sequence[OrbitRecord], frame: Optional[str] = None) -> pd.DataFrame:
    """Summary rows (k, T, d^2, d^n·T) for a list of orbit records"""
    rows = []
    for i, record in enumerate(records, start=1):
        row = {
            "k": record.level if record.level is not None else i,
            "T": record.T,
            "d_sq": "" if record.d_sq is None else str(record.d_sq),
            "d_sq_float": None if record.d_sq is None else float(record.d_sq),
            "dnT": record.metric_float,
            "construction": record.construction,
            "primes": _prime_config(record.prime_data),
        }
        if frame is not None:
            row = {"frame": frame, **row}
        rows.append(row)
    return pd.DataFrame(rows)


def _prime_config(prime_data: Dict) -> str:
    if "frames" in prime_data:
        parts = []
        for frame in prime_data["frames"]:
            parts.extend(f"{b['p']}^{b['k']}" for b in frame["blocks"])
        return "*".join(parts)
    if "blocks" in prime_data:
        return "*".join(f"{b['p']}^{b['k']}" for b in prime_data["blocks"])
    if "p" in prime_data:
        return f"{prime_data['p']}^{prime_data['k']}"
    return ""


def render(payload, table: Optional[pd.DataFrame], fmt: str) -> str:
    """Text for stdout or a file in the requested format"""
    if fmt == "json":
        return to_json_text(payload)
    if fmt == "csv":
        if table is None:
            table = pd.json_normalize(json.loads(to_json_text(payload)))
        return table.to_csv(index=False)
    if table is not None:
        return table.to_string(index=False) + "\n"
    return _text_block(json.loads(to_json_text(payload))) + "\n"


def _text_block(data, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(_text_block(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(_text_block(item, indent) if isinstance(item, (dict, list)) else f"{pad}- {item}"
                         for item in data)
    return f"{pad}{data}"


def emit(text: str, out: Optional[str] = None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def write_gnuplot(table: pd.DataFrame, path: str):
    """Columns: level max_dev dnT"""
    frame = table[["level", "max_dev", "dnT"]]
    with open(path, "w") as fh:
        fh.write("# level max_dev dnT\n")
        frame.to_csv(fh, sep=" ", header=False, index=False)
