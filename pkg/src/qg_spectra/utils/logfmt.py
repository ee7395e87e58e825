from __future__ import annotations

import json
import math
from typing import Any


def quote_value(value: Any) -> str:
    if value is None:
        return "NA"
    # bool before int: bool is an int subclass
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return f"{value:.10g}"
    if isinstance(value, complex):
        return f'"{value.real:.10g}{value.imag:+.10g}j"'
    # Strings & others: JSON-escape then strip surrounding quotes
    try:
        s = json.dumps(str(value))
        if len(s) >= 2 and s[0] == '"' and s[-1] == '"':
            s = s[1:-1]
        return f'"{s}"'
    except Exception:
        return f'"{str(value)}"'


def fmt(key: str, value: Any) -> str:
    return f"{key}={quote_value(value)}"


def fmt_many(**pairs: Any) -> str:
    """Join several key=value pairs in insertion order."""
    return " ".join(fmt(k, v) for k, v in pairs.items())
