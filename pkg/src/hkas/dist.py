"""Finite joint distributions with exact rational probabilities.

A JointDistribution stores an explicit support: every outcome with
positive probability, probabilities as Fractions summing to exactly 1.
Verdicts (independence, functional determination) are decided with exact
rational arithmetic; entropies are reported as floats, converting to
float only at the final step of each term.

Entropies use log base 2. Conditional entropy is computed directly from
its definition, H(T|G) = -sum p(t,g) log2(p(t,g)/p(g)), not as a
difference of entropies, so chain-rule identities are genuinely checked
by the test suite rather than holding by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateOutcome,
    EmptyVariableSet,
    OverlappingVariableSets,
    ProbabilityError,
    UnknownVariable,
)
from .jsonutil import Value, value_sort_key


def _neg_fsum(terms: Iterable[float]) -> float:
    # "+ 0.0" normalizes -0.0 so exact-zero entropies print as 0.0.
    return -math.fsum(terms) + 0.0


@dataclass(frozen=True)
class JointDistribution:
    """Canonical finite joint distribution.

    variables are sorted; outcomes are value tuples aligned with the
    variables and sorted canonically; probs are positive Fractions that
    sum to 1. Equality of two distributions is equality of these fields.
    """

    variables: tuple[str, ...]
    outcomes: tuple[tuple[Value, ...], ...]
    probs: tuple[Fraction, ...]

    @staticmethod
    def from_rows(rows: Iterable[tuple[Mapping[str, Value], Fraction]]) -> "JointDistribution":
        """Build from (assignment, probability) pairs.

        Every assignment must cover the same variable set; probabilities
        must be positive and sum to exactly 1; assignments must be unique.
        """
        materialized = list(rows)
        if not materialized:
            raise ProbabilityError("a distribution needs at least one outcome")
        variables = tuple(sorted(materialized[0][0]))
        if not variables:
            raise EmptyVariableSet("outcomes must assign at least one variable")
        varset = set(variables)
        table: dict[tuple[Value, ...], Fraction] = {}
        for assignment, raw_p in materialized:
            if set(assignment) != varset:
                extra = sorted(set(assignment) - varset)
                missing = sorted(varset - set(assignment))
                raise UnknownVariable(
                    f"outcome variables differ from {sorted(varset)}: "
                    f"extra {extra}, missing {missing}"
                )
            p = Fraction(raw_p)
            if p <= 0:
                raise ProbabilityError(f"probability must be positive, got {raw_p}")
            outcome = tuple(assignment[var] for var in variables)
            if outcome in table:
                raise DuplicateOutcome(f"outcome {outcome!r} appears more than once")
            table[outcome] = p
        total = sum(table.values())
        if total != 1:
            raise ProbabilityError(f"probabilities sum to {total}, expected 1")
        ordered = sorted(table, key=lambda out: tuple(value_sort_key(v) for v in out))
        return JointDistribution(
            variables=variables,
            outcomes=tuple(ordered),
            probs=tuple(table[out] for out in ordered),
        )

    def support_size(self) -> int:
        return len(self.outcomes)

    def rows(self) -> list[tuple[dict[str, Value], Fraction]]:
        """Outcomes as dicts, in canonical order."""
        return [
            (dict(zip(self.variables, outcome)), p)
            for outcome, p in zip(self.outcomes, self.probs)
        ]

    def _resolve(self, variables: Iterable[str], allow_empty: bool = False) -> tuple[str, ...]:
        ordered = tuple(sorted(set(variables)))
        if not ordered and not allow_empty:
            raise EmptyVariableSet("at least one variable is required")
        index = {var: i for i, var in enumerate(self.variables)}
        for var in ordered:
            if var not in index:
                raise UnknownVariable(f"unknown variable {var!r}")
        return ordered

    def _project(self, variables: tuple[str, ...]) -> dict[tuple[Value, ...], Fraction]:
        index = {var: i for i, var in enumerate(self.variables)}
        positions = [index[var] for var in variables]
        agg: dict[tuple[Value, ...], Fraction] = {}
        for outcome, p in zip(self.outcomes, self.probs):
            key = tuple(outcome[pos] for pos in positions)
            agg[key] = agg.get(key, Fraction(0)) + p
        return agg

    def _project_groups(
        self, groups: Sequence[tuple[str, ...]]
    ) -> dict[tuple[tuple[Value, ...], ...], Fraction]:
        index = {var: i for i, var in enumerate(self.variables)}
        positions = [[index[var] for var in group] for group in groups]
        agg: dict[tuple[tuple[Value, ...], ...], Fraction] = {}
        for outcome, p in zip(self.outcomes, self.probs):
            key = tuple(tuple(outcome[pos] for pos in group) for group in positions)
            agg[key] = agg.get(key, Fraction(0)) + p
        return agg

    def marginal(self, variables: Iterable[str]) -> "JointDistribution":
        """Marginal distribution over a non-empty variable subset."""
        ordered = self._resolve(variables)
        agg = self._project(ordered)
        keys = sorted(agg, key=lambda out: tuple(value_sort_key(v) for v in out))
        return JointDistribution(
            variables=ordered,
            outcomes=tuple(keys),
            probs=tuple(agg[key] for key in keys),
        )

    def entropy(self, variables: Iterable[str]) -> float:
        """Shannon entropy H of the given variables, in bits."""
        ordered = self._resolve(variables)
        agg = self._project(ordered)
        return _neg_fsum(float(p) * math.log2(float(p)) for p in agg.values())

    def conditional_entropy(self, targets: Iterable[str], givens: Iterable[str]) -> float:
        """H(targets | givens); an empty given set means plain entropy."""
        target_vars = self._resolve(targets)
        given_vars = self._resolve(givens, allow_empty=True)
        if set(target_vars) & set(given_vars):
            raise OverlappingVariableSets(
                f"targets and givens share {sorted(set(target_vars) & set(given_vars))}"
            )
        if not given_vars:
            return self.entropy(target_vars)
        joint = self._project_groups((given_vars, target_vars))
        given_marg = self._project(given_vars)
        return _neg_fsum(
            float(p) * math.log2(float(p / given_marg[gkey]))
            for (gkey, _tkey), p in joint.items()
        )

    def mutual_information(self, left: Iterable[str], right: Iterable[str]) -> float:
        """I(left; right) = H(left) - H(left | right)."""
        return self.entropy(left) - self.conditional_entropy(left, right)

    def conditional_mutual_information(
        self, left: Iterable[str], right: Iterable[str], givens: Iterable[str]
    ) -> float:
        """I(left; right | givens); empty givens reduce to mutual information."""
        given_vars = self._resolve(givens, allow_empty=True)
        if not given_vars:
            return self.mutual_information(left, right)
        right_vars = self._resolve(right)
        both = tuple(sorted(set(right_vars) | set(given_vars)))
        return self.conditional_entropy(left, given_vars) - self.conditional_entropy(left, both)

    def is_functionally_determined(self, targets: Iterable[str], givens: Iterable[str]) -> bool:
        """True iff the given variables determine the targets on the support.

        Exact predicate: every given-value has a single target-value.
        Equivalent to H(targets | givens) == 0.
        """
        target_vars = self._resolve(targets)
        given_vars = self._resolve(givens)
        if set(target_vars) & set(given_vars):
            raise OverlappingVariableSets(
                f"targets and givens share {sorted(set(target_vars) & set(given_vars))}"
            )
        joint = self._project_groups((given_vars, target_vars))
        seen: dict[tuple[Value, ...], tuple[Value, ...]] = {}
        for gkey, tkey in joint:
            if seen.setdefault(gkey, tkey) != tkey:
                return False
        return True

    def is_independent(self, left: Iterable[str], right: Iterable[str]) -> bool:
        """Exact independence of two disjoint variable sets.

        Checks the full product condition including zero-probability
        combinations: the joint support must have exactly
        |support(left)| * |support(right)| points and every joint
        probability must equal the product of the marginals.
        """
        return self.is_mutually_independent(
            [tuple(self._resolve(left)), tuple(self._resolve(right))]
        )

    def is_mutually_independent(self, groups: Sequence[Iterable[str]]) -> bool:
        """Exact mutual independence of two or more disjoint variable groups."""
        resolved = [self._resolve(group) for group in groups]
        if len(resolved) < 2:
            raise EmptyVariableSet("mutual independence needs at least two groups")
        seen: set[str] = set()
        for group in resolved:
            overlap = seen & set(group)
            if overlap:
                raise OverlappingVariableSets(f"groups share {sorted(overlap)}")
            seen |= set(group)
        joint = self._project_groups(resolved)
        margs = [self._project(group) for group in resolved]
        expected_size = 1
        for marg in margs:
            expected_size *= len(marg)
        if len(joint) != expected_size:
            return False
        for key, p in joint.items():
            product = Fraction(1)
            for part, marg in zip(key, margs):
                product *= marg[part]
            if p != product:
                return False
        return True
