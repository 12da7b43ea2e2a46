"""Bipartite maximum matching and the attacker-coverage check built on it.

An attack is countered when every attacker can be assigned its own defender
copy stationed in the attacker's closed neighborhood, no copy reused.  That
is exactly a perfect matching of the attackers into defender copies, so the
coverage check reduces to Hopcroft-Karp.
"""

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from defdom.errors import InputError
from defdom.graphs import Graph, VertexMultiset, check_multiset, require_vertices

INF = float("inf")


@dataclass(frozen=True)
class BipartiteInstance:
    """Left/right token counts plus the admissible (left, right) index pairs."""

    num_left: int
    num_right: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_left < 0 or self.num_right < 0:
            raise InputError("token counts must be nonnegative")
        seen = set()
        for li, ri in self.edges:
            if not (0 <= li < self.num_left and 0 <= ri < self.num_right):
                raise InputError(f"edge ({li},{ri}) outside token ranges")
            if (li, ri) in seen:
                raise InputError(f"duplicate edge ({li},{ri})")
            seen.add((li, ri))


def max_matching(inst: BipartiteInstance) -> tuple[int, dict[int, int]]:
    """Hopcroft-Karp.  Returns the matching size and a left->right pairing."""
    adj: list[list[int]] = [[] for _ in range(inst.num_left)]
    for li, ri in inst.edges:
        adj[li].append(ri)
    for rows in adj:
        rows.sort()

    match_l = [-1] * inst.num_left
    match_r = [-1] * inst.num_right
    dist = [INF] * inst.num_left

    def bfs() -> bool:
        q = deque()
        for u in range(inst.num_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for r in adj[u]:
                w = match_r[r]
                if w == -1:
                    found = True
                elif dist[w] is INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for r in adj[u]:
            w = match_r[r]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = r
                match_r[r] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(inst.num_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    pairing = {u: match_l[u] for u in range(inst.num_left) if match_l[u] != -1}
    return size, pairing


def defender_copies(defense: VertexMultiset) -> list[int]:
    """Expand a defense multiset into one token per copy, vertex-sorted."""
    out: list[int] = []
    for v in sorted(defense):
        out.extend([v] * defense[v])
    return out


def counters(g: Graph, defense: VertexMultiset, attack: Iterable[int]) -> bool:
    """True iff the defense counters the attack: the attackers admit a
    matching into distinct defender copies from their closed neighborhoods."""
    attackers: Sequence[int] = sorted(set(attack))
    require_vertices(g, attackers, "attack")
    check_multiset(g, defense)
    copies = defender_copies(defense)
    if len(attackers) > len(copies):
        return False
    edges = []
    for li, a in enumerate(attackers):
        hood = g.adj[a]
        for ri, d in enumerate(copies):
            if d == a or d in hood:
                edges.append((li, ri))
    inst = BipartiteInstance(len(attackers), len(copies), tuple(edges))
    size, _ = max_matching(inst)
    return size == len(attackers)
