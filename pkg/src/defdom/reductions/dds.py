"""Reduction from clique node deletion to defensive domination.

Given a graph G with a deletion budget s and forbidden clique size t, the
construction builds a labeled graph G' with an attack bound k = n+s and a
defense bound ell such that s deletions can make G free of K_t exactly when
G' admits an ell-defense countering every k-attack.

The layout of G' (all vertex groups and their complete-bipartite wiring) is
retained alongside the graph so certificates can be transformed in both
directions and instances can be audited after a round trip through files.
"""

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Optional

from defdom.errors import InputError
from defdom.graphs import (Graph, VertexMultiset, VertexSet, delete_vertices,
                           has_clique)

ELL_MODES = ("proof-consistent", "literal")


@dataclass(frozen=True)
class CndInstance:
    """Delete at most s vertices so that no K_t remains."""

    graph: Graph
    s: int
    t: int

    def __post_init__(self):
        if self.s < 1:
            raise InputError("deletion budget s must be at least 1")
        if self.t < 1:
            raise InputError("clique size t must be at least 1")
        if self.s > self.graph.n:
            raise InputError("deletion budget s exceeds the vertex count")


@dataclass(frozen=True)
class DdsLayout:
    """Vertex ids of every group in the constructed graph."""

    v_prime: dict[int, int]            # source vertex -> v'
    v_second: dict[int, int]           # source vertex -> v''
    e_vertex: dict[tuple[int, int], int]   # source edge (u<v) -> e'
    i1: tuple[int, ...]
    i2: tuple[int, ...]
    i3: tuple[int, ...]
    i4: tuple[int, ...]
    q1: tuple[int, ...]
    q2: tuple[int, ...]
    q4: tuple[int, ...]
    i_v: dict[int, tuple[int, ...]]    # source vertex -> its one-per-pair class
    ip_v: dict[int, tuple[int, ...]]   # source vertex -> its size-t class

    def v_group(self) -> tuple[int, ...]:
        out = []
        for v in sorted(self.v_prime):
            out.append(self.v_prime[v])
            out.append(self.v_second[v])
        return tuple(out)

    def e_group(self) -> tuple[int, ...]:
        return tuple(self.e_vertex[e] for e in sorted(self.e_vertex))

    def i_v_all(self) -> tuple[int, ...]:
        return tuple(w for v in sorted(self.i_v) for w in self.i_v[v])

    def ip_v_all(self) -> tuple[int, ...]:
        return tuple(w for v in sorted(self.ip_v) for w in self.ip_v[v])


def _bipartite_edges(left: Iterable[int], right: Iterable[int]) -> Iterator[tuple[int, int]]:
    right = tuple(right)
    for u in left:
        for w in right:
            yield (u, w) if u < w else (w, u)


def _clique_edges(members: Iterable[int]) -> Iterator[tuple[int, int]]:
    members = sorted(members)
    for i, u in enumerate(members):
        for w in members[i + 1:]:
            yield (u, w)


def _expected_edges(lay: DdsLayout) -> set[tuple[int, int]]:
    """The exact edge set the construction mandates for a layout."""
    edges: set[tuple[int, int]] = set()
    for (u, v), ev in lay.e_vertex.items():
        for w in (lay.v_prime[u], lay.v_second[u],
                  lay.v_prime[v], lay.v_second[v]):
            edges.add((min(ev, w), max(ev, w)))
    for q in (lay.q1, lay.q2, lay.q4):
        edges.update(_clique_edges(q))
    edges.update(_bipartite_edges(lay.i1, lay.q1))
    hub = lay.q1 + lay.i2 + lay.e_group() + lay.i_v_all()
    edges.update(_bipartite_edges(lay.q2, hub))
    v_group = lay.v_group()
    edges.update(_bipartite_edges(v_group, lay.q4 + lay.i3))
    edges.update(_bipartite_edges(lay.q4, lay.i4))
    for v in lay.v_prime:
        pair = (lay.v_prime[v], lay.v_second[v])
        edges.update(_bipartite_edges(pair, lay.i_v[v]))
        edges.update(_bipartite_edges(lay.i_v[v], lay.ip_v[v]))
    return edges


@dataclass(frozen=True)
class DdsInstance:
    graph: Graph
    k: int
    ell: int
    s: int
    t: int
    layout: DdsLayout

    @property
    def source_n(self) -> int:
        return len(self.layout.v_prime)

    def source_graph(self) -> Graph:
        return Graph(self.source_n, sorted(self.layout.e_vertex))

    def check(self) -> None:
        """Verify every structural invariant of the construction."""
        n, s, t = self.source_n, self.s, self.t
        lay = self.layout
        if self.k != n + s:
            raise InputError("attack bound k must equal n+s")
        if set(lay.i_v) != set(range(1, n + 1)) or set(lay.ip_v) != set(range(1, n + 1)):
            raise InputError("per-vertex classes must cover exactly 1..n")
        for u, w in lay.e_vertex:
            if not (1 <= u < w <= n):
                raise InputError(f"edge vertex references invalid source pair ({u},{w})")
        sizes = {
            "I1": (len(lay.i1), n + s),
            "I2": (len(lay.i2), n + s - comb(t, 2)),
            "I3": (len(lay.i3), n + s + self.ell),
            "I4": (len(lay.i4), n + s),
            "Q1": (len(lay.q1), n + s),
            "Q2": (len(lay.q2), n + s - (t + 1)),
            "Q4": (len(lay.q4), n + s),
        }
        for name, (got, want) in sizes.items():
            if got != want:
                raise InputError(f"group {name} has size {got}, expected {want}")
        for v in range(1, n + 1):
            if v not in lay.i_v or len(lay.i_v[v]) != comb(t, 2):
                raise InputError(f"pair class of source vertex {v} has wrong size")
            if v not in lay.ip_v or len(lay.ip_v[v]) != t:
                raise InputError(f"size-t class of source vertex {v} has wrong size")
        expected = _expected_edges(lay)
        actual = set(self.graph.edges())
        if expected != actual:
            missing = sorted(expected - actual)[:3]
            extra = sorted(actual - expected)[:3]
            raise InputError(
                f"edge set deviates from the construction: missing {missing}, "
                f"unexpected {extra}")


def _ell_value(n: int, s: int, t: int, ell_mode: str) -> int:
    if ell_mode == "proof-consistent":
        return 4 * (n + s) + n * t - (t + 1)
    if ell_mode == "literal":
        return 4 * (n + s) + n * t - (t - 1)
    raise InputError(f"unknown ell mode {ell_mode!r}; use one of {ELL_MODES}")


def cnd_to_dds(inst: CndInstance, ell_mode: str = "proof-consistent") -> DdsInstance:
    """Build the defensive-domination instance for a deletion instance.

    The defense bound has two modes: "proof-consistent" (default) matches
    the sizes that the correctness argument actually uses, "literal" is two
    larger.  Both are exposed; see the project ledger for the discrepancy.
    """
    g, s, t = inst.graph, inst.s, inst.t
    n = g.n
    if t < 4:
        raise InputError("construction requires t >= 4")
    if n + s < comb(t, 2):
        raise InputError(
            f"construction requires n+s >= t(t-1)/2 (got {n + s} < {comb(t, 2)})")
    if n + s < t + 1:
        raise InputError(
            f"construction requires n+s >= t+1 (got {n + s} < {t + 1})")
    ell = _ell_value(n, s, t, ell_mode)

    labels: dict[int, str] = {}
    counter = 0

    def fresh(label: str) -> int:
        nonlocal counter
        counter += 1
        labels[counter] = label
        return counter

    v_prime = {v: fresh(f"v'({v})") for v in range(1, n + 1)}
    v_second = {v: fresh(f"v''({v})") for v in range(1, n + 1)}
    e_vertex = {(u, v): fresh(f"e'({u},{v})") for u, v in g.edges()}
    group_sizes = (("I1", n + s), ("I2", n + s - comb(t, 2)),
                   ("I3", n + s + ell), ("I4", n + s),
                   ("Q1", n + s), ("Q2", n + s - (t + 1)), ("Q4", n + s))
    groups = {name: tuple(fresh(f"{name}#{i}") for i in range(1, size + 1))
              for name, size in group_sizes}
    i_v = {v: tuple(fresh(f"Iv({v})#{i}") for i in range(1, comb(t, 2) + 1))
           for v in range(1, n + 1)}
    ip_v = {v: tuple(fresh(f"I'v({v})#{i}") for i in range(1, t + 1))
            for v in range(1, n + 1)}

    layout = DdsLayout(v_prime=v_prime, v_second=v_second, e_vertex=e_vertex,
                       i1=groups["I1"], i2=groups["I2"], i3=groups["I3"],
                       i4=groups["I4"], q1=groups["Q1"], q2=groups["Q2"],
                       q4=groups["Q4"], i_v=i_v, ip_v=ip_v)
    edges = sorted(_expected_edges(layout))
    out = DdsInstance(Graph(counter, edges, labels), n + s, ell, s, t, layout)
    out.check()
    return out


_LABEL_PATTERNS = (
    ("vp", re.compile(r"^v'\((\d+)\)$")),
    ("vs", re.compile(r"^v''\((\d+)\)$")),
    ("e", re.compile(r"^e'\((\d+),(\d+)\)$")),
    ("group", re.compile(r"^(I[1234]|Q[124])#(\d+)$")),
    ("iv", re.compile(r"^Iv\((\d+)\)#(\d+)$")),
    ("ipv", re.compile(r"^I'v\((\d+)\)#(\d+)$")),
)


def dds_from_graph(g: Graph, k: int, ell: int) -> DdsInstance:
    """Rebuild an instance from a labeled graph plus its two parameters.

    Inverse of serialization: every vertex must carry a well-formed role
    label, and the reconstructed instance is fully re-checked.
    """
    v_prime: dict[int, int] = {}
    v_second: dict[int, int] = {}
    e_vertex: dict[tuple[int, int], int] = {}
    groups: dict[str, dict[int, int]] = {name: {} for name in
                                         ("I1", "I2", "I3", "I4", "Q1", "Q2", "Q4")}
    i_v: dict[int, dict[int, int]] = {}
    ip_v: dict[int, dict[int, int]] = {}
    for vid in g.vertices:
        label = (g.labels or {}).get(vid)
        if label is None:
            raise InputError(f"vertex {vid} carries no role label")
        for kind, pattern in _LABEL_PATTERNS:
            m = pattern.match(label)
            if not m:
                continue
            if kind == "vp":
                v_prime[int(m.group(1))] = vid
            elif kind == "vs":
                v_second[int(m.group(1))] = vid
            elif kind == "e":
                u, w = int(m.group(1)), int(m.group(2))
                if u >= w:
                    raise InputError(f"edge label {label!r} must have u < v")
                e_vertex[(u, w)] = vid
            elif kind == "group":
                groups[m.group(1)][int(m.group(2))] = vid
            elif kind == "iv":
                i_v.setdefault(int(m.group(1)), {})[int(m.group(2))] = vid
            else:
                ip_v.setdefault(int(m.group(1)), {})[int(m.group(2))] = vid
            break
        else:
            raise InputError(f"vertex {vid} has unrecognized role label {label!r}")

    n = len(v_prime)
    if set(v_prime) != set(range(1, n + 1)) or set(v_second) != set(range(1, n + 1)):
        raise InputError("source vertex labels must cover exactly 1..n")
    s = k - n
    if s < 1:
        raise InputError("k must exceed the source vertex count")
    t_sizes = {len(members) for members in ip_v.values()}
    if len(t_sizes) != 1:
        raise InputError("inconsistent size-t class sizes")
    t = t_sizes.pop()

    def ordered(members: dict[int, int], what: str) -> tuple[int, ...]:
        if set(members) != set(range(1, len(members) + 1)):
            raise InputError(f"{what} indices must cover 1..{len(members)}")
        return tuple(members[i] for i in range(1, len(members) + 1))

    layout = DdsLayout(
        v_prime=v_prime, v_second=v_second, e_vertex=e_vertex,
        i1=ordered(groups["I1"], "I1"), i2=ordered(groups["I2"], "I2"),
        i3=ordered(groups["I3"], "I3"), i4=ordered(groups["I4"], "I4"),
        q1=ordered(groups["Q1"], "Q1"), q2=ordered(groups["Q2"], "Q2"),
        q4=ordered(groups["Q4"], "Q4"),
        i_v={v: ordered(m, f"Iv({v})") for v, m in sorted(i_v.items())},
        ip_v={v: ordered(m, f"I'v({v})") for v, m in sorted(ip_v.items())})
    inst = DdsInstance(g, k, ell, s, t, layout)
    inst.check()
    return inst


def proof_defense(dds: DdsInstance, deletion: VertexSet) -> VertexMultiset:
    """The forward-direction defense for a deletion certificate.

    One defender on every clique-group vertex and every size-t class
    vertex, one on v' for every source vertex, and one on v'' exactly for
    deleted vertices.
    """
    lay = dds.layout
    if len(deletion) != dds.s:
        raise InputError(f"deletion set must have exactly s={dds.s} vertices")
    for v in deletion:
        if v not in lay.v_prime:
            raise InputError(f"deletion set mentions unknown source vertex {v}")
    defense: VertexMultiset = {}
    for vid in lay.q1 + lay.q2 + lay.q4 + lay.ip_v_all():
        defense[vid] = 1
    for v in sorted(lay.v_prime):
        defense[lay.v_prime[v]] = 1
    for v in sorted(deletion):
        defense[lay.v_second[v]] = 1
    return defense


def enumerate_serious_attacks(dds: DdsInstance) -> Iterator[VertexSet]:
    """All attacks of the shape that separates yes from no instances.

    Each attack is the whole I2 group plus exactly t(t-1)/2 edge vertices,
    for a total of k; yielded in lexicographic order of the edge choice.
    """
    lay = dds.layout
    base = frozenset(lay.i2)
    e_ids = sorted(lay.e_group())
    for combo in combinations(e_ids, comb(dds.t, 2)):
        yield base | frozenset(combo)


def extract_deletion_set(dds: DdsInstance, defense: VertexMultiset) -> VertexSet:
    """Recover a deletion certificate from a good defense.

    Applies the three normalization moves in order: stray pair-class
    defenders slide onto v', all defenders on I2 and edge vertices collect
    on Q2, and surplus v'' defenders drain to Q2 until the source-vertex
    group holds exactly k defenders.  The result is the set of doubly
    defended source vertices, which must have size s.
    """
    lay = dds.layout
    out = {vid: c for vid, c in defense.items() if c > 0}
    for vid in out:
        if not (1 <= vid <= dds.graph.n):
            raise InputError(f"defense mentions unknown vertex {vid}")

    def move_one(src: int, dst: int) -> None:
        out[src] -= 1
        if out[src] == 0:
            del out[src]
        out[dst] = out.get(dst, 0) + 1

    for v in sorted(lay.v_prime):
        vp, vs = lay.v_prime[v], lay.v_second[v]
        if vp in out or vs in out:
            continue
        donor = next((w for w in lay.i_v[v] if w in out), None)
        if donor is None:
            raise InputError(
                "defense violates backward-direction observation: no defender "
                f"near the classes of source vertex {v}")
        move_one(donor, vp)

    movers = [w for w in lay.i2 + lay.e_group() if w in out]
    if movers and not lay.q2:
        raise InputError("defenders stranded on I2/E with an empty Q2 group")
    for w in movers:
        while w in out:
            move_one(w, lay.q2[0])

    def v_count() -> int:
        return sum(out.get(w, 0) for w in lay.v_group())

    while v_count() > dds.k:
        doubly = next((v for v in sorted(lay.v_prime)
                       if lay.v_prime[v] in out and lay.v_second[v] in out), None)
        if doubly is None:
            raise InputError(
                "cannot normalize: source group overfull but no vertex is "
                "doubly defended")
        if not lay.q2:
            raise InputError("cannot normalize: surplus defenders but empty Q2")
        move_one(lay.v_second[doubly], lay.q2[0])

    extracted = frozenset(v for v in lay.v_prime
                          if lay.v_prime[v] in out and lay.v_second[v] in out)
    if len(extracted) != dds.s:
        raise InputError(
            f"normalized defense marks {len(extracted)} doubly defended "
            f"vertices, expected s={dds.s}")
    return extracted


def solve_cnd_bruteforce(inst: CndInstance) -> Optional[VertexSet]:
    """Smallest (then lexicographically first) deletion set, if one exists.

    Exhaustive over all subsets of size 0..s; intended for desk-scale
    instances and oracle duty.
    """
    vertices = sorted(inst.graph.vertices)
    for size in range(0, inst.s + 1):
        for combo in combinations(vertices, size):
            remaining, _ = delete_vertices(inst.graph, frozenset(combo))
            if not has_clique(remaining, inst.t):
                return frozenset(combo)
    return None
