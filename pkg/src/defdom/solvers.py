"""Exact brute-force solvers for smallest defenses.

These are reference solvers: they enumerate candidate defenses in ascending
size (lexicographic within a size), verify each one, and return the first
that survives, so the witness is canonical.  Intended for desk-scale
instances; the interval greedy is the scalable route.
"""

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from defdom.errors import InputError
from defdom.graphs import (Graph, VertexMultiset, VertexSet, check_multiset,
                           multiset_size, require_vertices)
from defdom.defense import good_defense
from defdom.matching import counters


@dataclass(frozen=True)
class SolveResult:
    """Optimum size, one optimal witness, and how many candidates were tried."""

    optimum: int
    witness: Union[VertexSet, VertexMultiset]
    explored: int


def min_set_defense(g: Graph, k: int) -> SolveResult:
    """Smallest set of distinct defenders countering every attack of size <= k.

    Always solvable: stationing one defender on every vertex matches any
    attack identically.
    """
    if k < 1:
        raise InputError("attack budget k must be at least 1")
    explored = 0
    for size in range(0, g.n + 1):
        for combo in itertools.combinations(g.vertices, size):
            explored += 1
            defense = {v: 1 for v in combo}
            if good_defense(g, defense, k, strategy="exhaustive"):
                return SolveResult(size, frozenset(combo), explored)
    raise AssertionError("unreachable: the full vertex set is always a defense")


def _capped_multisets(vertices: Sequence[int], total: int, cap: int):
    """Multisets of the given total size with per-vertex count <= cap, in
    lexicographic order of their expanded sorted tuples."""
    n = len(vertices)

    def rec(idx: int, remaining: int, acc: list[tuple[int, int]]):
        if remaining == 0:
            yield dict(acc)
            return
        if idx == n:
            return
        if remaining > cap * (n - idx):
            return
        v = vertices[idx]
        for c in range(min(cap, remaining), -1, -1):
            if c:
                acc.append((v, c))
            yield from rec(idx + 1, remaining - c, acc)
            if c:
                acc.pop()

    yield from rec(0, total, [])


def min_multiset_defense(g: Graph, k: int) -> SolveResult:
    """Smallest defender multiset countering every attack of size <= k.

    Stacking more than k copies on one vertex is never useful (at most k
    attackers can be matched there), so enumeration caps multiplicity at k.
    """
    if k < 1:
        raise InputError("attack budget k must be at least 1")
    explored = 0
    for size in range(0, g.n + 1):
        for defense in _capped_multisets(range(1, g.n + 1), size, k):
            explored += 1
            if good_defense(g, defense, k, strategy="exhaustive"):
                return SolveResult(size, dict(defense), explored)
    raise AssertionError("unreachable: one defender per vertex is always enough")


def domination_number(g: Graph) -> SolveResult:
    """Classical domination: defenses against single-vertex attacks."""
    return min_set_defense(g, 1)


def min_constrained_multiset(g: Graph, attacks: Iterable[Iterable[int]],
                             lower: VertexMultiset,
                             upper: VertexMultiset) -> Optional[SolveResult]:
    """Smallest multiset D with lower <= D <= upper countering each listed
    attack (only those).  Returns None when even `upper` fails."""
    check_multiset(g, lower)
    check_multiset(g, upper)
    for v, c in lower.items():
        if c > upper.get(v, 0):
            raise InputError(f"lower bound exceeds upper bound at vertex {v}")
    attack_list = []
    for a in attacks:
        a = frozenset(a)
        require_vertices(g, a, "attack")
        attack_list.append(a)

    def ok(defense: VertexMultiset) -> bool:
        return all(counters(g, defense, a) for a in attack_list)

    if not ok(upper):
        return None
    slack = {v: upper[v] - lower.get(v, 0) for v in sorted(upper)
             if upper[v] > lower.get(v, 0)}
    slack_vertices = sorted(slack)
    base_size = multiset_size(lower)
    explored = 0
    max_extra = sum(slack.values())
    for extra in range(0, max_extra + 1):
        for add in _capped_multisets_bounded(slack_vertices, extra, slack):
            explored += 1
            defense = dict(lower)
            for v, c in add.items():
                defense[v] = defense.get(v, 0) + c
            if ok(defense):
                return SolveResult(base_size + extra, defense, explored)
    return None


def _capped_multisets_bounded(vertices: Sequence[int], total: int,
                              caps: dict[int, int]):
    """Like _capped_multisets but with a per-vertex cap table."""
    n = len(vertices)

    def rec(idx: int, remaining: int, acc: list[tuple[int, int]]):
        if remaining == 0:
            yield dict(acc)
            return
        if idx == n:
            return
        if remaining > sum(caps[v] for v in vertices[idx:]):
            return
        v = vertices[idx]
        for c in range(min(caps[v], remaining), -1, -1):
            if c:
                acc.append((v, c))
            yield from rec(idx + 1, remaining - c, acc)
            if c:
                acc.pop()

    yield from rec(0, total, [])
