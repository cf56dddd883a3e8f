"""Deterministic result documents.

Floats are written as `%.9e` so repeated runs give byte-identical files;
non-finite values become the strings "inf", "-inf" and "nan".
"""

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

import numpy as np
from pydantic import BaseModel

FLOAT_FORMAT = "%.9e"
INDENT = "  "


def format_float(value: float) -> str:
    value = float(value)
    if math.isfinite(value):
        return FLOAT_FORMAT % value
    return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")


def _render(value: Any, depth: int) -> str:
    pad = INDENT * (depth + 1)
    if isinstance(value, BaseModel):
        value = value.model_dump()
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_render(v, depth + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + INDENT * depth + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [f"{pad}{_render(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + INDENT * depth + "]"
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = format_float(value)
        return text if math.isfinite(value) else json.dumps(text)
    if isinstance(value, Enum):
        return json.dumps(str(value.value))
    return json.dumps(str(value))


def render_json(document: Union[Mapping[str, Any], BaseModel]) -> str:
    """JSON text with insertion-ordered keys and fixed float formatting."""
    return _render(document, 0) + "\n"


def csv_cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_csv(
    path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> Path:
    """Write rows in the given order with an RFC 4180 header line."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([csv_cell(cell) for cell in row])
            f.flush()
    return path
