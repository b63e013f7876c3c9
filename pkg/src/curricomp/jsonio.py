"""Canonical JSON emission: sorted keys, capped float precision, stable bytes.

Golden-file tests compare output byte for byte, so every run and platform
must serialize identically. Reals use up to 12 significant digits; values
that round to integers are written without a decimal point.
"""

from __future__ import annotations

import json
from math import isfinite


def format_real(x: float) -> str:
    """A real number with up to 12 significant digits, minimal form."""
    if not isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x}")
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return format(x, ".12g")


def _emit(value, out: list[str], level: int, indent: int) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_real(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(value)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(pad)
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(": ")
            _emit(value[key], out, level + 1, indent)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(pad)
            _emit(item, out, level + 1, indent)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(close_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def canonical_json(value, indent: int = 2) -> str:
    """Serialize to deterministic JSON text with a trailing newline."""
    out: list[str] = []
    _emit(value, out, 0, indent)
    out.append("\n")
    return "".join(out)
