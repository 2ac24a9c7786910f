"""Canonical JSON helpers shared by loaders, serializers, and the CLI.

Canonical form: keys sorted, rationals rendered as "num/den" strings,
floats rounded to 12 significant digits, two-space indent, trailing
newline. Re-serializing the same object yields byte-identical text.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ParseError, ProbabilityError

# Outcome values are ints, strings, or nested tuples of values.
Value = int | str | tuple


def parse_prob(raw: object) -> Fraction:
    """Parse a JSON probability: an integer or a "num/den" string."""
    if isinstance(raw, bool):
        raise ProbabilityError(f"probability must be an integer or 'num/den' string, got {raw!r}")
    if isinstance(raw, int):
        frac = Fraction(raw)
    elif isinstance(raw, str):
        try:
            frac = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProbabilityError(f"malformed probability {raw!r}: {exc}") from None
        if frac.denominator < 1:
            raise ProbabilityError(f"malformed probability {raw!r}")
    else:
        raise ProbabilityError(f"probability must be an integer or 'num/den' string, got {raw!r}")
    if frac <= 0:
        raise ProbabilityError(f"probability must be positive, got {raw!r}")
    return frac


def prob_str(p: Fraction) -> str:
    """Render a rational as the canonical "num/den" string."""
    return f"{p.numerator}/{p.denominator}"


def value_from_json(raw: object) -> Value:
    """Decode an outcome value: int, string, or nested list thereof."""
    if isinstance(raw, bool):
        raise ParseError(f"unsupported outcome value {raw!r}")
    if isinstance(raw, int) or isinstance(raw, str):
        return raw
    if isinstance(raw, list):
        return tuple(value_from_json(item) for item in raw)
    raise ParseError(f"unsupported outcome value {raw!r}")


def value_to_json(value: Value) -> object:
    """Encode an outcome value back to JSON-compatible form."""
    if isinstance(value, tuple):
        return [value_to_json(item) for item in value]
    return value


def value_sort_key(value: Value) -> tuple:
    """Total order over heterogeneous outcome values (ints, strs, tuples)."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    return (2, tuple(value_sort_key(item) for item in value))


def round_float(x: float) -> float:
    """Round to 12 significant digits, the canonical float precision."""
    return float(f"{x:.12g}")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return prob_str(obj)
    if isinstance(obj, float):
        return round_float(obj)
    if isinstance(obj, dict):
        return {key: _jsonable(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(item) for item in obj]
    return obj


def dumps_canonical(doc: Any) -> str:
    """Serialize to the canonical JSON text form."""
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
