"""Scheme documents: loading, validation, serialization, coalition queries."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from conftest import DATA_DIR
from hkas import (
    CoalitionQuery,
    InvalidCoalition,
    ParseError,
    ProbabilityError,
    Scheme,
    SupportTooLarge,
    UnknownClass,
    VariableMismatch,
    gen_trivial,
    load_scheme,
    load_scheme_file,
    max_support_size,
    scheme_query_entropy,
    scheme_to_json,
    serialize_scheme,
)

TOL = 1e-9


def minimal_doc() -> dict:
    return {
        "graph": {"classes": ["x"], "edges": []},
        "support": [
            {"assignment": {"K:x": 0, "S:x": [["x", 0]]}, "p": "1/2"},
            {"assignment": {"K:x": 1, "S:x": [["x", 1]]}, "p": "1/2"},
        ],
    }


def test_load_minimal_scheme():
    scheme = load_scheme(minimal_doc())
    assert scheme.graph.classes == ("x",)
    assert scheme.dist.support_size() == 2
    assert scheme.dist.entropy(["K:x"]) == pytest.approx(1.0, abs=TOL)


def test_round_trip(diamond):
    scheme = gen_trivial(diamond, 2)
    text = serialize_scheme(scheme)
    again = load_scheme(json.loads(text))
    assert again == scheme
    assert serialize_scheme(again) == text


def test_load_golden_file():
    scheme = load_scheme_file(str(DATA_DIR / "golden-random-q2-s2.json"))
    assert sorted(scheme.graph.classes) == ["a", "b", "c", "r"]
    assert scheme.dist.support_size() == 16
    assert sum(scheme.dist.probs) == Fraction(1)


def test_graph_file_reference(tmp_path, diamond):
    graph_doc = {"classes": ["x"], "edges": []}
    (tmp_path / "g.json").write_text(json.dumps(graph_doc))
    doc = minimal_doc()
    del doc["graph"]
    doc["graph_file"] = "g.json"
    scheme_path = tmp_path / "s.json"
    scheme_path.write_text(json.dumps(doc))
    scheme = load_scheme_file(str(scheme_path))
    assert scheme.graph.classes == ("x",)
    # explicit graph_path overrides the reference
    other = scheme_to_json(gen_trivial(diamond, 2))["graph"]
    (tmp_path / "g2.json").write_text(json.dumps(other))
    with pytest.raises(VariableMismatch):
        load_scheme_file(str(scheme_path), str(tmp_path / "g2.json"))


def test_embedded_graph_wins_with_warning():
    doc = minimal_doc()
    other_graph = {"classes": ["x", "y"], "edges": []}
    with pytest.warns(UserWarning):
        scheme = load_scheme(doc, other_graph)
    assert scheme.graph.classes == ("x",)
    # identical graphs produce no warning
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        load_scheme(doc, {"classes": ["x"], "edges": []})


def test_graph_supplied_separately():
    doc = minimal_doc()
    graph_doc = doc.pop("graph")
    scheme = load_scheme(doc, graph_doc)
    assert scheme.graph.classes == ("x",)
    with pytest.raises(ParseError):
        load_scheme(doc)


def test_unresolved_graph_file():
    doc = minimal_doc()
    del doc["graph"]
    doc["graph_file"] = "somewhere.json"
    with pytest.raises(ParseError):
        load_scheme(doc)


def test_parse_errors():
    with pytest.raises(ParseError):
        load_scheme([])
    doc = minimal_doc()
    doc["extra"] = 1
    with pytest.raises(ParseError):
        load_scheme(doc)
    doc = minimal_doc()
    del doc["support"]
    with pytest.raises(ParseError):
        load_scheme(doc)
    doc = minimal_doc()
    doc["support"] = []
    with pytest.raises(ParseError):
        load_scheme(doc)
    doc = minimal_doc()
    doc["support"][0] = {"assignment": {}}
    with pytest.raises(ParseError):
        load_scheme(doc)
    doc = minimal_doc()
    doc["support"][0]["assignment"]["K:x"] = 0.5
    with pytest.raises(ParseError):
        load_scheme(doc)


def test_probability_errors():
    doc = minimal_doc()
    doc["support"][0]["p"] = "0/4"
    with pytest.raises(ProbabilityError):
        load_scheme(doc)
    doc = minimal_doc()
    doc["support"][0]["p"] = "oops"
    with pytest.raises(ProbabilityError):
        load_scheme(doc)
    doc = minimal_doc()
    doc["support"][0]["p"] = "1/3"
    with pytest.raises(ProbabilityError):
        load_scheme(doc)
    # integer probabilities are allowed
    doc = minimal_doc()
    doc["support"] = [doc["support"][0]]
    doc["support"][0]["p"] = 1
    assert load_scheme(doc).dist.probs == (Fraction(1),)


def test_variable_mismatch():
    doc = minimal_doc()
    for row in doc["support"]:
        row["assignment"]["K:ghost"] = 0
    with pytest.raises(VariableMismatch):
        load_scheme(doc)
    doc = minimal_doc()
    for row in doc["support"]:
        del row["assignment"]["S:x"]
    with pytest.raises(VariableMismatch):
        load_scheme(doc)


def test_scheme_constructor_validates(diamond):
    trivial = gen_trivial(diamond, 2)
    with pytest.raises(VariableMismatch):
        Scheme(graph=diamond, dist=trivial.dist.marginal(["K:a", "S:a"]))


def test_query_entropy(diamond):
    scheme = gen_trivial(diamond, 2)
    full = CoalitionQuery("a", frozenset({"b", "c"}), frozenset({"r"}))
    assert scheme_query_entropy(scheme, full) == pytest.approx(1.0, abs=TOL)
    empty = CoalitionQuery("a")
    assert scheme_query_entropy(scheme, empty) == pytest.approx(1.0, abs=TOL)
    with pytest.raises(InvalidCoalition):
        scheme_query_entropy(scheme, CoalitionQuery("a", frozenset({"r"})))
    with pytest.raises(InvalidCoalition):
        scheme_query_entropy(
            scheme, CoalitionQuery("a", frozenset(), frozenset({"b"}))
        )
    with pytest.raises(UnknownClass):
        scheme_query_entropy(scheme, CoalitionQuery("zz"))
    with pytest.raises(UnknownClass):
        scheme_query_entropy(scheme, CoalitionQuery("a", frozenset({"zz"})))


def test_support_bound(monkeypatch, diamond):
    assert max_support_size() == 1_000_000
    monkeypatch.setenv("HKAS_MAX_SUPPORT", "8")
    assert max_support_size() == 8
    with pytest.raises(SupportTooLarge):
        gen_trivial(diamond, 2)
    doc = scheme_to_json(gen_trivial(diamond.build(["x"], []), 2))
    # 2 rows fit in a bound of 8
    assert load_scheme(doc).dist.support_size() == 2
    monkeypatch.setenv("HKAS_MAX_SUPPORT", "1")
    with pytest.raises(SupportTooLarge):
        load_scheme(doc)
    monkeypatch.setenv("HKAS_MAX_SUPPORT", "zero")
    with pytest.raises(ParseError):
        max_support_size()
    monkeypatch.setenv("HKAS_MAX_SUPPORT", "-3")
    with pytest.raises(ParseError):
        max_support_size()
