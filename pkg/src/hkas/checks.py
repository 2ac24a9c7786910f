"""Security checks over schemes: correctness, KI, SKI, key independence.

All verdicts are decided with exact rational arithmetic; the float
entropies carried by witnesses are reporting detail only.

Coalition checks run in one of two modes:

* maximal (default): test only the largest legal coalition per class.
  Conditioning on more can only lower conditional entropy, so a class
  passes against the maximal coalition iff it passes against every
  sub-coalition.
* exhaustive: enumerate every legal coalition. Kept as an independent
  oracle for the maximal-mode shortcut; refuses to run when a class has
  more than MAX_EXHAUSTIVE coalition members.

Witnesses: maximal mode reports the maximal coalition; exhaustive mode
reports the lexicographically smallest failing coalition, with subsets
compared as sorted label tuples.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .errors import CoalitionSpaceTooLarge
from .scheme import CheckReport, Scheme, Witness, key_var, secret_var

MAX_EXHAUSTIVE = 20

CHECK_KINDS = ("correctness", "ki", "ski", "key-indep")


def _sorted_subsets(labels: Iterable[str], include_empty: bool) -> list[tuple[str, ...]]:
    pool = sorted(labels)
    low = 0 if include_empty else 1
    subsets: list[tuple[str, ...]] = []
    for size in range(low, len(pool) + 1):
        subsets.extend(itertools.combinations(pool, size))
    subsets.sort()
    return subsets


def _witness(scheme: Scheme, cls: str,
             secrets: tuple[str, ...], keys: tuple[str, ...]) -> Witness:
    target = [key_var(cls)]
    givens = [secret_var(v) for v in secrets] + [key_var(w) for w in keys]
    return Witness(
        cls=cls,
        secrets=secrets,
        keys=keys,
        h_key=scheme.dist.entropy(target),
        h_key_given=scheme.dist.conditional_entropy(target, givens),
    )


def check_correctness(scheme: Scheme) -> CheckReport:
    """Every class must be able to derive the keys below it.

    For each v and each u accessible from v, the secret of v must
    functionally determine the key of u.
    """
    witnesses: list[Witness] = []
    for v in sorted(scheme.graph.classes):
        for u in sorted(scheme.graph.accessible_set(v)):
            if not scheme.dist.is_functionally_determined([key_var(u)], [secret_var(v)]):
                witnesses.append(_witness(scheme, u, (v,), ()))
    return CheckReport(kind="correctness", passed=not witnesses,
                       witnesses=tuple(witnesses))


def check_ki(scheme: Scheme, exhaustive: bool = False) -> CheckReport:
    """Keys must be independent of the secrets of any forbidden coalition."""
    witnesses: list[Witness] = []
    for u in sorted(scheme.graph.classes):
        forbidden = scheme.graph.forbidden_set(u)
        if not forbidden:
            continue
        if not exhaustive:
            coalition = tuple(sorted(forbidden))
            secrets = [secret_var(v) for v in coalition]
            if not scheme.dist.is_independent([key_var(u)], secrets):
                witnesses.append(_witness(scheme, u, coalition, ()))
            continue
        if len(forbidden) > MAX_EXHAUSTIVE:
            raise CoalitionSpaceTooLarge(
                f"class {u!r} has {len(forbidden)} forbidden classes; "
                f"exhaustive mode is capped at {MAX_EXHAUSTIVE}"
            )
        for coalition in _sorted_subsets(forbidden, include_empty=False):
            secrets = [secret_var(v) for v in coalition]
            if not scheme.dist.is_independent([key_var(u)], secrets):
                witnesses.append(_witness(scheme, u, coalition, ()))
                break
    return CheckReport(kind="ki", passed=not witnesses, witnesses=tuple(witnesses))


def check_ski(scheme: Scheme, exhaustive: bool = False) -> CheckReport:
    """Keys must stay independent even when ancestors contribute their keys.

    The coalition holds the secrets of classes forbidden to reach u plus
    the keys (not secrets) of classes above u.
    """
    witnesses: list[Witness] = []
    for u in sorted(scheme.graph.classes):
        forbidden = scheme.graph.forbidden_set(u)
        ancestors = scheme.graph.ancestor_set(u)
        if not forbidden and not ancestors:
            continue
        if not exhaustive:
            secrets = tuple(sorted(forbidden))
            keys = tuple(sorted(ancestors))
            givens = [secret_var(v) for v in secrets] + [key_var(w) for w in keys]
            if not scheme.dist.is_independent([key_var(u)], givens):
                witnesses.append(_witness(scheme, u, secrets, keys))
            continue
        if len(forbidden) + len(ancestors) > MAX_EXHAUSTIVE:
            raise CoalitionSpaceTooLarge(
                f"class {u!r} has {len(forbidden) + len(ancestors)} coalition "
                f"candidates; exhaustive mode is capped at {MAX_EXHAUSTIVE}"
            )
        found = False
        for secrets in _sorted_subsets(forbidden, include_empty=True):
            if found:
                break
            for keys in _sorted_subsets(ancestors, include_empty=True):
                if not secrets and not keys:
                    continue
                givens = [secret_var(v) for v in secrets]
                givens += [key_var(w) for w in keys]
                if not scheme.dist.is_independent([key_var(u)], givens):
                    witnesses.append(_witness(scheme, u, secrets, keys))
                    found = True
                    break
    return CheckReport(kind="ski", passed=not witnesses, witnesses=tuple(witnesses))


def check_key_independence(scheme: Scheme) -> CheckReport:
    """All keys taken together must be mutually independent."""
    labels = sorted(scheme.graph.classes)
    if len(labels) < 2:
        return CheckReport(kind="key-indep", passed=True, witnesses=())
    groups = [(key_var(u),) for u in labels]
    if scheme.dist.is_mutually_independent(groups):
        return CheckReport(kind="key-indep", passed=True, witnesses=())
    # Mutual independence fails iff some key depends on the joint of the
    # keys before it (in any fixed order); the first such prefix is the
    # witness.
    for i in range(1, len(labels)):
        prefix = tuple(labels[:i])
        prefix_keys = [key_var(w) for w in prefix]
        if not scheme.dist.is_independent([key_var(labels[i])], prefix_keys):
            witness = _witness(scheme, labels[i], (), prefix)
            return CheckReport(kind="key-indep", passed=False, witnesses=(witness,))
    raise AssertionError("mutual independence failed but every prefix passed")


def run_checks(scheme: Scheme, mode: str = "all", exhaustive: bool = False) -> list[CheckReport]:
    """Run one named check, or all four in a fixed order."""
    if mode == "all":
        kinds: tuple[str, ...] = CHECK_KINDS
    elif mode in CHECK_KINDS:
        kinds = (mode,)
    else:
        raise ValueError(f"unknown check mode {mode!r}")
    reports: list[CheckReport] = []
    for kind in kinds:
        if kind == "correctness":
            reports.append(check_correctness(scheme))
        elif kind == "ki":
            reports.append(check_ki(scheme, exhaustive=exhaustive))
        elif kind == "ski":
            reports.append(check_ski(scheme, exhaustive=exhaustive))
        else:
            reports.append(check_key_independence(scheme))
    return reports
