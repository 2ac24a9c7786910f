"""Scheme generators for a given access graph.

All generators share one construction: enumerate key tuples over the
classes (sorted by label) and give every class the secret

    S_u = tuple of (v, k_v) pairs for v in accessible_set(u), sorted by label,

so a class's secret spells out every key it may derive and correctness
holds by construction. The generators differ in the distribution over
key tuples and in deliberate defects:

* gen_trivial: independent uniform keys over {0..q-1}; passes all checks.
* gen_leaky: like trivial, but one leaker's secret also carries the key
  of a class the leaker must not reach; correctness still holds, KI fails.
* gen_correlated: forces k_u == k_w for one pair; key independence fails.
* gen_random_correct: seeded; either the uniform product distribution or
  a 64-ball multinomial over key tuples (all probabilities have
  denominator at most 64). Correct by construction; KI may or may not
  hold.

Determinism: gen_random_correct uses splitmix64 seeded by the given
integer, so equal inputs produce byte-identical serialized schemes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .dist import JointDistribution
from .errors import InvalidLeak, SupportTooLarge
from .graph import AccessGraph
from .jsonutil import Value
from .scheme import Scheme, key_var, max_support_size, secret_var

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 PRNG: tiny, fast, and reproducible across platforms."""

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Unbiased draw from range(n) via rejection sampling."""
        if n <= 0:
            raise ValueError(f"n must be positive, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")


def _check_bound(total: int, graph: AccessGraph, q: int) -> None:
    bound = max_support_size()
    if total > bound:
        raise SupportTooLarge(
            f"q**{len(graph.classes)} = {total} key tuples with q={q} "
            f"exceeds the support bound {bound}"
        )


def _secret_members(graph: AccessGraph) -> dict[str, tuple[str, ...]]:
    return {
        u: tuple(sorted(graph.accessible_set(u)))
        for u in graph.classes
    }


def _assignment(labels: tuple[str, ...], keys: dict[str, int],
                members: dict[str, tuple[str, ...]]) -> dict[str, Value]:
    assignment: dict[str, Value] = {}
    for u in labels:
        assignment[key_var(u)] = keys[u]
        assignment[secret_var(u)] = tuple((v, keys[v]) for v in members[u])
    return assignment


def gen_trivial(graph: AccessGraph, q: int) -> Scheme:
    """Independent uniform keys; passes correctness, KI, SKI, key-indep."""
    _check_q(q)
    labels = tuple(sorted(graph.classes))
    total = q ** len(labels)
    _check_bound(total, graph, q)
    members = _secret_members(graph)
    p = Fraction(1, total)
    rows = []
    for combo in itertools.product(range(q), repeat=len(labels)):
        keys = dict(zip(labels, combo))
        rows.append((_assignment(labels, keys, members), p))
    return Scheme(graph=graph, dist=JointDistribution.from_rows(rows))


def gen_leaky(graph: AccessGraph, q: int, target: str, leaker: str) -> Scheme:
    """Trivial scheme plus a leak: the leaker's secret carries the target's key.

    The leaker must belong to forbidden_set(target), otherwise the leak
    would be legitimate access and InvalidLeak is raised. Correctness
    still passes; KI fails at the target with the leaker as witness.
    """
    _check_q(q)
    graph._check_class(target)
    graph._check_class(leaker)
    if leaker not in graph.forbidden_set(target):
        raise InvalidLeak(
            f"class {leaker!r} can already access {target!r}; "
            f"a leak needs a forbidden pair"
        )
    labels = tuple(sorted(graph.classes))
    total = q ** len(labels)
    _check_bound(total, graph, q)
    members = dict(_secret_members(graph))
    members[leaker] = tuple(sorted(set(members[leaker]) | {target}))
    p = Fraction(1, total)
    rows = []
    for combo in itertools.product(range(q), repeat=len(labels)):
        keys = dict(zip(labels, combo))
        rows.append((_assignment(labels, keys, members), p))
    return Scheme(graph=graph, dist=JointDistribution.from_rows(rows))


def gen_correlated(graph: AccessGraph, q: int, u: str, w: str) -> Scheme:
    """Trivial scheme with k_u == k_w forced; key independence fails.

    The pair is unordered. Support size is q**(len(classes)-1).
    """
    _check_q(q)
    graph._check_class(u)
    graph._check_class(w)
    if u == w:
        raise InvalidLeak("correlated pair must name two distinct classes")
    labels = tuple(sorted(graph.classes))
    free = min(u, w)
    forced = max(u, w)
    free_labels = tuple(label for label in labels if label != forced)
    total = q ** len(free_labels)
    _check_bound(total, graph, q)
    members = _secret_members(graph)
    p = Fraction(1, total)
    rows = []
    for combo in itertools.product(range(q), repeat=len(free_labels)):
        keys = dict(zip(free_labels, combo))
        keys[forced] = keys[free]
        rows.append((_assignment(labels, keys, members), p))
    return Scheme(graph=graph, dist=JointDistribution.from_rows(rows))


def gen_random_correct(graph: AccessGraph, q: int, seed: int) -> Scheme:
    """Seeded correct-by-construction scheme with small denominators.

    One PRNG bit selects the shape: the uniform product distribution over
    key tuples, or a multinomial from dropping 64 balls onto the q**n key
    tuples (probabilities count/64). Raises SupportTooLarge when q**n
    exceeds the support bound, regardless of seed, so failure does not
    depend on the drawn branch.
    """
    _check_q(q)
    labels = tuple(sorted(graph.classes))
    total = q ** len(labels)
    _check_bound(total, graph, q)
    members = _secret_members(graph)
    rng = SplitMix64(seed)
    weights: dict[int, Fraction]
    if rng.next_u64() & 1:
        weights = {index: Fraction(1, total) for index in range(total)}
    else:
        counts: dict[int, int] = {}
        for _ in range(64):
            index = rng.next_below(total)
            counts[index] = counts.get(index, 0) + 1
        weights = {index: Fraction(c, 64) for index, c in counts.items()}
    rows = []
    for index in sorted(weights):
        digits = []
        rest = index
        for _ in labels:
            digits.append(rest % q)
            rest //= q
        digits.reverse()
        keys = dict(zip(labels, digits))
        rows.append((_assignment(labels, keys, members), weights[index]))
    return Scheme(graph=graph, dist=JointDistribution.from_rows(rows))
