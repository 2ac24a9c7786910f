"""Canonical JSON helpers and the packaged console entry point."""

from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hkas import ProbabilityError
from hkas.jsonutil import (
    dumps_canonical,
    parse_prob,
    prob_str,
    round_float,
    value_from_json,
    value_sort_key,
    value_to_json,
)


def test_parse_prob():
    assert parse_prob("1/8") == Fraction(1, 8)
    assert parse_prob("3") == Fraction(3)
    assert parse_prob(2) == Fraction(2)
    for bad in ("0/4", "-1/2", 0, -2, "1/0", "x/y", 0.5, True, None, [1, 2]):
        with pytest.raises(ProbabilityError):
            parse_prob(bad)


def test_prob_str_round_trip():
    for frac in (Fraction(1, 8), Fraction(7), Fraction(2, 6)):
        assert parse_prob(prob_str(frac)) == frac
    assert prob_str(Fraction(2, 6)) == "1/3"


def test_value_codec():
    assert value_from_json(3) == 3
    assert value_from_json("x") == "x"
    assert value_from_json([["a", 0], ["b", 1]]) == (("a", 0), ("b", 1))
    assert value_to_json((("a", 0),)) == [["a", 0]]
    for bad in (0.5, True, None, {"k": 1}):
        with pytest.raises(Exception):
            value_from_json(bad)


def test_value_sort_key_total_order():
    values = [(("b", 1),), 3, "a", 0, (("a", 0),), "b", ()]
    ordered = sorted(values, key=value_sort_key)
    assert ordered == [0, 3, "a", "b", (), (("a", 0),), (("b", 1),)]


def test_round_float():
    assert round_float(0.1234567890123456) == 0.123456789012
    assert round_float(1.0) == 1.0
    assert round_float(0.0) == 0.0


def test_dumps_canonical():
    doc = {"b": Fraction(1, 3), "a": [1.23456789012345e-5, ("x", 2)]}
    text = dumps_canonical(doc)
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == {"a": [1.23456789012e-05, ["x", 2]], "b": "1/3"}
    assert text.index('"a"') < text.index('"b"')
    assert dumps_canonical(doc) == text


def test_console_entry_point_declared():
    from importlib.metadata import entry_points

    scripts = entry_points(group="console_scripts")
    matches = [ep for ep in scripts if ep.name == "hkas"]
    assert matches and matches[0].value == "hkas.cli:main"


def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "hkas.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "check" in proc.stdout and "validate" in proc.stdout
