"""Entropy expression grammar and evaluation."""

from __future__ import annotations

import pytest

from hkas import (
    EntropyExpr,
    ExprSyntaxError,
    OverlappingVariableSets,
    UnknownClass,
    evaluate_entropy_expr,
    gen_correlated,
    gen_leaky,
    gen_trivial,
    parse_entropy_expr,
)

TOL = 1e-9


def test_parse_shapes():
    assert parse_entropy_expr("H(K:a)") == EntropyExpr("H", (("K:a",),))
    assert parse_entropy_expr("H(K:a|S:b)") == EntropyExpr(
        "H", (("K:a",), ("S:b",))
    )
    assert parse_entropy_expr("H(K:a,S:b|S:c,K:r)") == EntropyExpr(
        "H", (("K:a", "S:b"), ("S:c", "K:r"))
    )
    assert parse_entropy_expr("I(K:a;S:b)") == EntropyExpr(
        "I", (("K:a",), ("S:b",))
    )
    assert parse_entropy_expr("I(K:a;K:b|S:r)") == EntropyExpr(
        "I", (("K:a",), ("K:b",), ("S:r",))
    )


def test_parse_whitespace_insensitive():
    tight = parse_entropy_expr("H(K:a|S:b,S:c)")
    spaced = parse_entropy_expr("  H ( K:a | S:b , S:c ) ")
    assert tight == spaced


def test_parse_label_charset():
    expr = parse_entropy_expr("H(K:node-1.x_2)")
    assert expr.groups == (("K:node-1.x_2",),)


def test_parse_errors_carry_positions():
    cases = [
        ("", 0),
        ("X(K:a)", 0),
        ("H K:a)", 2),
        ("H()", 2),
        ("H(K:a,)", 6),
        ("H(K:a|)", 6),
        ("I(K:a)", 5),
        ("H(K:a", 5),
        ("H(Q:a)", 2),
        ("H(K:a) x", 7),
        ("H(K:)", 4),
        ("I(K:a;K:b|K:c;K:d)", 13),
    ]
    for text, position in cases:
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse_entropy_expr(text)
        assert exc_info.value.position == position, text


def test_evaluate_on_trivial(diamond):
    scheme = gen_trivial(diamond, 2)
    assert evaluate_entropy_expr(scheme, "H(K:a)") == pytest.approx(1.0, abs=TOL)
    assert evaluate_entropy_expr(scheme, "H(K:a|S:b,S:c)") == pytest.approx(
        1.0, abs=TOL
    )
    assert evaluate_entropy_expr(scheme, "H(K:a|S:r)") == 0.0
    assert evaluate_entropy_expr(scheme, "I(K:a;S:r)") == pytest.approx(1.0, abs=TOL)
    assert evaluate_entropy_expr(scheme, "I(K:a;K:b|S:r)") == pytest.approx(
        0.0, abs=TOL
    )
    assert evaluate_entropy_expr(scheme, "H(K:a,K:b)") == pytest.approx(2.0, abs=TOL)
    # duplicate variables collapse to a set
    assert evaluate_entropy_expr(scheme, "H(K:a,K:a)") == pytest.approx(1.0, abs=TOL)


def test_evaluate_on_defective_schemes(diamond):
    leaky = gen_leaky(diamond, 2, "a", "b")
    assert evaluate_entropy_expr(leaky, "H(K:a|S:b)") == 0.0
    correlated = gen_correlated(diamond, 2, "a", "r")
    assert evaluate_entropy_expr(correlated, "I(K:a;K:r)") == pytest.approx(
        1.0, abs=TOL
    )


def test_evaluate_accepts_parsed_expr(diamond):
    scheme = gen_trivial(diamond, 2)
    expr = parse_entropy_expr("H(K:c|S:a)")
    assert evaluate_entropy_expr(scheme, expr) == 0.0


def test_evaluate_errors(diamond):
    scheme = gen_trivial(diamond, 2)
    with pytest.raises(UnknownClass):
        evaluate_entropy_expr(scheme, "H(K:zz)")
    with pytest.raises(OverlappingVariableSets):
        evaluate_entropy_expr(scheme, "H(K:a|K:a)")
