"""Shared fixtures: the standard graph shapes and a random DAG builder."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from hkas import AccessGraph

DATA_DIR = Path(__file__).parent / "data"


def make_chain4() -> AccessGraph:
    return AccessGraph.build(
        ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]
    )


def make_diamond() -> AccessGraph:
    return AccessGraph.build(
        ["r", "a", "b", "c"],
        [("r", "a"), ("r", "b"), ("a", "c"), ("b", "c")],
    )


def make_tree7() -> AccessGraph:
    return AccessGraph.build(
        ["r", "a", "b", "c", "d", "e", "f"],
        [("r", "a"), ("r", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("b", "f")],
    )


def make_antichain4() -> AccessGraph:
    return AccessGraph.build(["a", "b", "c", "d"], [])


def make_random_dag(rng: random.Random, max_nodes: int,
                    min_nodes: int = 1, edge_prob: float = 0.4) -> AccessGraph:
    """Random DAG: edges only go forward along a shuffled node order."""
    count = rng.randint(min_nodes, max_nodes)
    labels = [f"n{i}" for i in range(count)]
    order = labels[:]
    rng.shuffle(order)
    edges = []
    for i in range(count):
        for j in range(i + 1, count):
            if rng.random() < edge_prob:
                edges.append((order[i], order[j]))
    return AccessGraph.build(labels, edges)


@pytest.fixture
def chain4() -> AccessGraph:
    return make_chain4()


@pytest.fixture
def diamond() -> AccessGraph:
    return make_diamond()


@pytest.fixture
def tree7() -> AccessGraph:
    return make_tree7()


@pytest.fixture
def antichain4() -> AccessGraph:
    return make_antichain4()
