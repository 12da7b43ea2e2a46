"""Reduction from two-level 3-CNF satisfiability to clique node deletion.

The constructed graph has one K_{c,c} gadget per existential variable, a
two-vertex gadget per universal variable, and a K_{3,3} gadget per clause,
glued together by per-edge clique paddings, one clause clique per clause,
and occurrence wiring.  Deleting s = ac+3c vertices can remove every K_t
(t = b+c) exactly when some existential assignment defeats all universal
responses.

Every vertex carries a structured role label, so certificates survive
serialization and the typed clique audit can work on any (possibly
vertex-deleted) labeled graph without the formula at hand.
"""

import re
from dataclasses import dataclass
from typing import Optional

from defdom.errors import InputError
from defdom.formulas import Assignment, E2Formula
from defdom.graphs import Graph, VertexSet, find_clique
from defdom.reductions.dds import CndInstance


@dataclass(frozen=True)
class SatLayout:
    """Vertex ids of every gadget part, keyed by source indices."""

    x_pos: dict[int, tuple[int, ...]]   # variable index -> ids numbered 1..c
    x_neg: dict[int, tuple[int, ...]]
    x_pads: dict[tuple[int, int, int], tuple[int, ...]]   # (i, p, q) -> pad ids
    y_pos: dict[int, int]
    y_neg: dict[int, int]
    goods: dict[int, tuple[int, int, int]]   # clause -> good ids by occurrence
    bads: dict[int, tuple[int, int, int]]    # clause -> bad ids; first is ugly
    c_pads: dict[tuple[int, int, int], tuple[int, ...]]   # (k, o, o') -> pad ids
    qpads: dict[int, tuple[int, ...]]        # clause -> clause-clique pad ids
    q_members: dict[int, tuple[int, ...]]    # clause -> full clause-clique ids


def _occurrence(f: E2Formula, k: int, o: int) -> tuple[str, int, bool]:
    """(family, index within family, positive?) of occurrence o of clause k."""
    lit = f.clauses[k - 1][o - 1]
    var = abs(lit)
    if var <= f.a:
        return ("x", var, lit > 0)
    return ("y", var - f.a, lit > 0)


def _sat_expected_edges(f: E2Formula, lay: SatLayout, t: int) -> set[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        edges.add((u, v) if u < v else (v, u))

    def add_clique(members) -> None:
        members = sorted(members)
        for idx, u in enumerate(members):
            for v in members[idx + 1:]:
                add(u, v)

    c = f.c
    all_y = [lay.y_pos[j] for j in sorted(lay.y_pos)] + \
            [lay.y_neg[j] for j in sorted(lay.y_neg)]
    for i in range(1, f.a + 1):
        for p in range(c):
            for q in range(c):
                add(lay.x_pos[i][p], lay.x_neg[i][q])
    for k in range(1, c + 1):
        for good in lay.goods[k]:
            for bad in lay.bads[k]:
                add(good, bad)
    for (i, p, q), pads in lay.x_pads.items():
        add_clique((lay.x_pos[i][p - 1], lay.x_neg[i][q - 1]) + pads)
    for (k, o, op), pads in lay.c_pads.items():
        add_clique((lay.goods[k][o - 1], lay.bads[k][op - 1]) + pads)
    for k in range(1, c + 1):
        add_clique(lay.q_members[k])
    for k in range(1, c + 1):
        for o in (1, 2, 3):
            family, j, positive = _occurrence(f, k, o)
            if family != "y":
                continue
            u = lay.goods[k][o - 1]
            add(u, lay.y_pos[j] if positive else lay.y_neg[j])
            for jp in lay.y_pos:
                if jp != j:
                    add(u, lay.y_pos[jp])
                    add(u, lay.y_neg[jp])
        ugly = lay.bads[k][0]
        for w in all_y:
            add(ugly, w)
    for j in sorted(lay.y_pos):
        for jp in sorted(lay.y_pos):
            if j < jp:
                for u in (lay.y_pos[j], lay.y_neg[j]):
                    for w in (lay.y_pos[jp], lay.y_neg[jp]):
                        add(u, w)
    cross: dict[int, list[int]] = {}
    for k in range(1, c + 1):
        members = list(lay.bads[k])
        for o in (1, 2, 3):
            if _occurrence(f, k, o)[0] == "y":
                members.append(lay.goods[k][o - 1])
        cross[k] = members
    for k in range(1, c + 1):
        for kp in range(k + 1, c + 1):
            for u in cross[k]:
                for w in cross[kp]:
                    add(u, w)
    return edges


@dataclass(frozen=True)
class SatCnd:
    """A clique-node-deletion instance constructed from a formula."""

    formula: E2Formula
    cnd: CndInstance
    layout: SatLayout

    @property
    def graph(self) -> Graph:
        return self.cnd.graph

    def check(self) -> None:
        f, lay, t = self.formula, self.layout, self.cnd.t
        if self.cnd.s != f.a * f.c + 3 * f.c:
            raise InputError("deletion budget must equal ac+3c")
        if t != f.b + f.c:
            raise InputError("clique size must equal b+c")
        for i in range(1, f.a + 1):
            if len(lay.x_pos.get(i, ())) != f.c or len(lay.x_neg.get(i, ())) != f.c:
                raise InputError(f"variable gadget {i} has wrong class sizes")
        for k in range(1, f.c + 1):
            g = sum(1 for o in (1, 2, 3) if _occurrence(f, k, o)[0] == "x")
            if len(lay.qpads[k]) != t - 1 - g:
                raise InputError(f"clause clique {k} has wrong pad count")
            if len(lay.q_members[k]) != t - 1 + g:
                raise InputError(f"clause clique {k} has wrong size")
        for pads in lay.x_pads.values():
            if len(pads) != t - 2:
                raise InputError("variable edge padding has wrong size")
        for pads in lay.c_pads.values():
            if len(pads) != t - 2:
                raise InputError("clause edge padding has wrong size")
        expected = _sat_expected_edges(f, lay, t)
        actual = set(self.graph.edges())
        if expected != actual:
            missing = sorted(expected - actual)[:3]
            extra = sorted(actual - expected)[:3]
            raise InputError(
                f"edge set deviates from the construction: missing {missing}, "
                f"unexpected {extra}")


def e2sat_to_cnd(f: E2Formula, allow_small: bool = False) -> SatCnd:
    """Build the deletion instance for a formula.

    The standard precondition is more than six clauses; `allow_small`
    waives it for downscaled audit cross-checks (the construction is still
    well formed whenever b+c >= 4).
    """
    c = f.c
    if c < 1:
        raise InputError("construction requires at least one clause")
    if not allow_small and c <= 6:
        raise InputError(f"construction requires c > 6 (got c = {c})")
    t = f.b + c
    if allow_small and t < 4:
        raise InputError(f"downscaled construction still requires b+c >= 4 (got {t})")
    s = f.a * c + 3 * c

    labels: dict[int, str] = {}
    counter = 0

    def fresh(label: str) -> int:
        nonlocal counter
        counter += 1
        labels[counter] = label
        return counter

    x_pos = {i: tuple(fresh(f"x{i}:pos:{p}") for p in range(1, c + 1))
             for i in range(1, f.a + 1)}
    x_neg = {i: tuple(fresh(f"x{i}:neg:{p}") for p in range(1, c + 1))
             for i in range(1, f.a + 1)}
    x_pads = {}
    for i in range(1, f.a + 1):
        for p in range(1, c + 1):
            for q in range(1, c + 1):
                x_pads[(i, p, q)] = tuple(
                    fresh(f"x{i}:pad:{p}:{q}:{j}") for j in range(1, t - 1))
    y_pos = {j: fresh(f"y{j}:pos") for j in range(1, f.b + 1)}
    y_neg = {j: fresh(f"y{j}:neg") for j in range(1, f.b + 1)}
    goods = {}
    bads = {}
    for k in range(1, c + 1):
        occ_labels = []
        for o in (1, 2, 3):
            family, idx, positive = _occurrence(f, k, o)
            sign = "pos" if positive else "neg"
            occ_labels.append(fresh(f"c{k}:good:{o}:{family}{idx}:{sign}"))
        goods[k] = tuple(occ_labels)
        bads[k] = (fresh(f"c{k}:ugly:1"), fresh(f"c{k}:bad:2"), fresh(f"c{k}:bad:3"))
    c_pads = {}
    for k in range(1, c + 1):
        for o in (1, 2, 3):
            for op in (1, 2, 3):
                c_pads[(k, o, op)] = tuple(
                    fresh(f"c{k}:pad:{o}:{op}:{j}") for j in range(1, t - 1))
    qpads = {}
    q_members = {}
    for k in range(1, c + 1):
        z: list[int] = []
        for o in (1, 2, 3):
            family, i, positive = _occurrence(f, k, o)
            if family != "x":
                continue
            z.append(goods[k][o - 1])
            member = x_pos[i][k - 1] if positive else x_neg[i][k - 1]
            labels[member] += ":Q"
            z.append(member)
        g = len(z) // 2
        qpads[k] = tuple(fresh(f"c{k}:qpad:{j}") for j in range(1, t - g))
        q_members[k] = tuple(sorted(z + list(qpads[k])))

    layout = SatLayout(x_pos=x_pos, x_neg=x_neg, x_pads=x_pads,
                       y_pos=y_pos, y_neg=y_neg, goods=goods, bads=bads,
                       c_pads=c_pads, qpads=qpads, q_members=q_members)
    edges = sorted(_sat_expected_edges(f, layout, t))
    graph = Graph(counter, edges, labels)
    out = SatCnd(f, CndInstance(graph, s, t), layout)
    out.check()
    return out


_SAT_PATTERNS = (
    ("xcore", re.compile(r"^x(\d+):(pos|neg):(\d+)(:Q)?$")),
    ("xpad", re.compile(r"^x(\d+):pad:(\d+):(\d+):(\d+)$")),
    ("y", re.compile(r"^y(\d+):(pos|neg)$")),
    ("good", re.compile(r"^c(\d+):good:([123]):([xy])(\d+):(pos|neg)$")),
    ("bad", re.compile(r"^c(\d+):(bad|ugly):([123])$")),
    ("cpad", re.compile(r"^c(\d+):pad:([123]):([123]):(\d+)$")),
    ("qpad", re.compile(r"^c(\d+):qpad:(\d+)$")),
)


def _parse_sat_labels(g: Graph) -> dict[str, dict]:
    """Group surviving vertices by role; unlabeled or alien labels reject."""
    parsed: dict[str, dict] = {name: {} for name, _ in _SAT_PATTERNS}
    for vid in g.vertices:
        label = (g.labels or {}).get(vid)
        if label is None:
            raise InputError(f"vertex {vid} carries no role label")
        for name, pattern in _SAT_PATTERNS:
            m = pattern.match(label)
            if m:
                parsed[name][vid] = m.groups()
                break
        else:
            raise InputError(f"vertex {vid} has unrecognized role label {label!r}")
    return parsed


def sat_cnd_from_graph(g: Graph, s: int, t: int) -> SatCnd:
    """Rebuild a full (undeleted) instance, formula included, from labels."""
    parsed = _parse_sat_labels(g)
    a = max((int(grp[0]) for grp in parsed["xcore"].values()), default=0)
    b = max((int(grp[0]) for grp in parsed["y"].values()), default=0)
    c = max((int(grp[0]) for grp in parsed["good"].values()), default=0)
    if c < 1:
        raise InputError("no clause gadgets found in labels")

    occ: dict[tuple[int, int], tuple[str, int, bool]] = {}
    goods_ids: dict[int, dict[int, int]] = {}
    for vid, (k, o, family, idx, sign) in parsed["good"].items():
        key = (int(k), int(o))
        occ[key] = (family, int(idx), sign == "pos")
        goods_ids.setdefault(int(k), {})[int(o)] = vid
    clauses = []
    for k in range(1, c + 1):
        lits = []
        for o in (1, 2, 3):
            if (k, o) not in occ:
                raise InputError(f"clause {k} is missing occurrence {o}")
            family, idx, positive = occ[(k, o)]
            var = idx if family == "x" else a + idx
            lits.append(var if positive else -var)
        clauses.append(tuple(lits))
    formula = E2Formula(a, b, tuple(clauses))

    def slot_tuple(mapping: dict[int, int], size: int, what: str) -> tuple[int, ...]:
        if set(mapping) != set(range(1, size + 1)):
            raise InputError(f"{what} slots must cover 1..{size}")
        return tuple(mapping[i] for i in range(1, size + 1))

    x_pos: dict[int, dict[int, int]] = {}
    x_neg: dict[int, dict[int, int]] = {}
    q_flagged: set[int] = set()
    for vid, (i, kind, p, qflag) in parsed["xcore"].items():
        target = x_pos if kind == "pos" else x_neg
        target.setdefault(int(i), {})[int(p)] = vid
        if qflag:
            q_flagged.add(vid)
    x_pads: dict[tuple[int, int, int], dict[int, int]] = {}
    for vid, (i, p, q, j) in parsed["xpad"].items():
        x_pads.setdefault((int(i), int(p), int(q)), {})[int(j)] = vid
    y_pos: dict[int, int] = {}
    y_neg: dict[int, int] = {}
    for vid, (j, kind) in parsed["y"].items():
        (y_pos if kind == "pos" else y_neg)[int(j)] = vid
    bads_ids: dict[int, dict[int, int]] = {}
    for vid, (k, _, o) in parsed["bad"].items():
        bads_ids.setdefault(int(k), {})[int(o)] = vid
    c_pads: dict[tuple[int, int, int], dict[int, int]] = {}
    for vid, (k, o, op, j) in parsed["cpad"].items():
        c_pads.setdefault((int(k), int(o), int(op)), {})[int(j)] = vid
    qpads_ids: dict[int, dict[int, int]] = {}
    for vid, (k, j) in parsed["qpad"].items():
        qpads_ids.setdefault(int(k), {})[int(j)] = vid

    if set(goods_ids) != set(range(1, c + 1)) or set(bads_ids) != set(range(1, c + 1)):
        raise InputError("clause gadgets must cover clause indices 1..c")
    if set(x_pos) != set(range(1, a + 1)) or set(x_neg) != set(range(1, a + 1)):
        raise InputError("variable gadgets must cover variable indices 1..a")
    if set(y_pos) != set(range(1, b + 1)) or set(y_neg) != set(range(1, b + 1)):
        raise InputError("universal gadgets must cover variable indices 1..b")
    want_xpad = {(i, p, q) for i in range(1, a + 1)
                 for p in range(1, c + 1) for q in range(1, c + 1)}
    if set(x_pads) != want_xpad:
        raise InputError("variable-edge paddings must cover every gadget edge")
    want_cpad = {(k, o, op) for k in range(1, c + 1)
                 for o in (1, 2, 3) for op in (1, 2, 3)}
    if set(c_pads) != want_cpad:
        raise InputError("clause-edge paddings must cover every gadget edge")

    q_members = {}
    qpads = {}
    for k in range(1, c + 1):
        z = []
        for o in (1, 2, 3):
            family, i, positive = occ[(k, o)]
            if family != "x":
                continue
            z.append(goods_ids[k][o])
            member = (x_pos if positive else x_neg)[i][k]
            if member not in q_flagged:
                raise InputError(
                    f"variable vertex for clause {k} occurrence {o} lacks its "
                    "clause-clique flag")
            z.append(member)
        g_count = len(z) // 2
        qpads[k] = slot_tuple(qpads_ids.get(k, {}), t - 1 - g_count, f"clause {k} qpad")
        q_members[k] = tuple(sorted(z + list(qpads[k])))

    layout = SatLayout(
        x_pos={i: slot_tuple(m, c, f"x{i} positive") for i, m in sorted(x_pos.items())},
        x_neg={i: slot_tuple(m, c, f"x{i} negative") for i, m in sorted(x_neg.items())},
        x_pads={key: slot_tuple(m, t - 2, f"x pad {key}")
                for key, m in sorted(x_pads.items())},
        y_pos=y_pos, y_neg=y_neg,
        goods={k: slot_tuple(m, 3, f"clause {k} good") for k, m in sorted(goods_ids.items())},
        bads={k: slot_tuple(m, 3, f"clause {k} bad") for k, m in sorted(bads_ids.items())},
        c_pads={key: slot_tuple(m, t - 2, f"clause pad {key}")
                for key, m in sorted(c_pads.items())},
        qpads=qpads,
        q_members=q_members)
    out = SatCnd(formula, CndInstance(g, s, t), layout)
    out.check()
    return out


def valuation_to_deletion(sc: SatCnd, nu: Assignment) -> VertexSet:
    """The forward-direction deletion set for an existential assignment.

    Removes the class falsified by nu in every variable gadget, and the
    goods (bads) of every clause that nu does (does not) already satisfy.
    """
    f, lay = sc.formula, sc.layout
    if len(nu) != f.a:
        raise InputError(f"assignment must cover all {f.a} existential variables")
    removed: set[int] = set()
    for i in range(1, f.a + 1):
        removed.update(lay.x_neg[i] if nu[i - 1] else lay.x_pos[i])
    values = {i + 1: v for i, v in enumerate(nu)}
    for k, clause in enumerate(sc.formula.clauses, start=1):
        x_satisfied = any(
            (lit > 0) == values[abs(lit)]
            for lit in clause if abs(lit) <= f.a)
        removed.update(lay.goods[k] if x_satisfied else lay.bads[k])
    assert len(removed) == sc.cnd.s
    return frozenset(removed)


def deletion_to_valuation(sc: SatCnd, deletion: VertexSet) -> Assignment:
    """Read an existential assignment off a valid deletion set.

    The budget argument forces one full class per variable gadget and one
    full class per clause gadget; any other shape is rejected.
    """
    f, lay = sc.formula, sc.layout
    if len(deletion) > sc.cnd.s:
        raise InputError("deletion set exceeds the budget")
    nu = []
    for i in range(1, f.a + 1):
        if set(lay.x_neg[i]) <= deletion:
            nu.append(True)
        elif set(lay.x_pos[i]) <= deletion:
            nu.append(False)
        else:
            raise InputError(
                f"deletion set contains no full class of variable gadget {i}; "
                "the budget count forces one full class per gadget")
    for k in range(1, f.c + 1):
        if not (set(lay.goods[k]) <= deletion or set(lay.bads[k]) <= deletion):
            raise InputError(
                f"deletion set contains no full class of clause gadget {k}; "
                "the budget count forces goods or bads per clause")
    return tuple(nu)


def kt_witness_from_y(sc: SatCnd, nu: Assignment, mu: Assignment) -> VertexSet:
    """The clique that survives deletion when (nu, mu) satisfies everything.

    Picks the assignment vertex in every universal gadget and, per clause,
    the ugly vertex when it survived, otherwise the good vertex of a
    mu-satisfied universal occurrence.  The result is verified to be a
    pairwise adjacent set of size b+c avoiding the deletion.
    """
    f, lay = sc.formula, sc.layout
    if len(mu) != f.b:
        raise InputError(f"assignment must cover all {f.b} universal variables")
    deletion = valuation_to_deletion(sc, nu)
    witness: list[int] = []
    for j in range(1, f.b + 1):
        witness.append(lay.y_pos[j] if mu[j - 1] else lay.y_neg[j])
    for k in range(1, f.c + 1):
        ugly = lay.bads[k][0]
        if ugly not in deletion:
            witness.append(ugly)
            continue
        chosen = None
        for o in (1, 2, 3):
            family, j, positive = _occurrence(f, k, o)
            if family == "y" and mu[j - 1] == positive:
                chosen = lay.goods[k][o - 1]
                break
        if chosen is None:
            raise InputError(
                f"universal assignment does not satisfy clause {k}, so no "
                "witness vertex is available there")
        witness.append(chosen)
    out = frozenset(witness)
    if len(out) != sc.cnd.t or out & deletion:
        raise InputError("witness construction failed consistency checks")
    _verify_clique(sc.graph, out)
    return out


def _verify_clique(g: Graph, members: VertexSet) -> None:
    members = sorted(members)
    for idx, u in enumerate(members):
        for v in members[idx + 1:]:
            if not g.has_edge(u, v):
                raise InputError(f"claimed clique misses edge ({u},{v})")


def typed_clique_audit(g: Graph, t: int) -> Optional[VertexSet]:
    """Find a K_t in a labeled construction by checking the four shapes.

    Works on the construction itself or any vertex-deleted remnant of it:
    (a) a variable-gadget edge with its full padding, (b) a clause-gadget
    edge with its full padding, (c) enough survivors of one clause clique,
    (d) anything built from universal-gadget, bad, and universally assigned
    good vertices, searched exactly on that small induced subgraph.  Every
    witness is re-verified edge by edge before being returned.
    """
    if t < 5:
        raise InputError("typed audit requires t >= 5")
    parsed = _parse_sat_labels(g)

    x_pos: dict[tuple[int, int], int] = {}
    x_neg: dict[tuple[int, int], int] = {}
    q_core: dict[int, list[int]] = {}
    for vid, (i, kind, p, qflag) in parsed["xcore"].items():
        (x_pos if kind == "pos" else x_neg)[(int(i), int(p))] = vid
        if qflag:
            q_core.setdefault(int(p), []).append(vid)
    x_pads: dict[tuple[int, int, int], list[int]] = {}
    for vid, (i, p, q, _) in parsed["xpad"].items():
        x_pads.setdefault((int(i), int(p), int(q)), []).append(vid)
    for (i, p, q), pads in sorted(x_pads.items()):
        if len(pads) == t - 2 and (i, p) in x_pos and (i, q) in x_neg:
            witness = frozenset([x_pos[(i, p)], x_neg[(i, q)]] + pads)
            _verify_clique(g, witness)
            return witness

    goods: dict[tuple[int, int], int] = {}
    y_goods: dict[int, list[int]] = {}
    x_goods: dict[int, list[int]] = {}
    for vid, (k, o, family, idx, sign) in parsed["good"].items():
        goods[(int(k), int(o))] = vid
        if family == "y":
            y_goods.setdefault(int(k), []).append(vid)
        else:
            x_goods.setdefault(int(k), []).append(vid)
    bads: dict[tuple[int, int], int] = {}
    for vid, (k, _, o) in parsed["bad"].items():
        bads[(int(k), int(o))] = vid
    c_pads: dict[tuple[int, int, int], list[int]] = {}
    for vid, (k, o, op, _) in parsed["cpad"].items():
        c_pads.setdefault((int(k), int(o), int(op)), []).append(vid)
    for (k, o, op), pads in sorted(c_pads.items()):
        if len(pads) == t - 2 and (k, o) in goods and (k, op) in bads:
            witness = frozenset([goods[(k, o)], bads[(k, op)]] + pads)
            _verify_clique(g, witness)
            return witness

    q_members: dict[int, list[int]] = {}
    for vid, (k, _) in parsed["qpad"].items():
        q_members.setdefault(int(k), []).append(vid)
    for k, members in x_goods.items():
        q_members.setdefault(k, []).extend(members)
    for k, members in q_core.items():
        q_members.setdefault(k, []).extend(members)
    for k in sorted(q_members):
        members = sorted(q_members[k])
        if len(members) >= t:
            witness = frozenset(members[:t])
            _verify_clique(g, witness)
            return witness

    pool = sorted(set(parsed["y"])
                  | {vid for (k, o), vid in bads.items()}
                  | {vid for members in y_goods.values() for vid in members})
    index = {vid: pos for pos, vid in enumerate(pool, start=1)}
    sub_edges = []
    for pos_u, u in enumerate(pool):
        for v in pool[pos_u + 1:]:
            if g.has_edge(u, v):
                sub_edges.append((index[u], index[v]))
    sub = Graph(len(pool), sub_edges)
    found = find_clique(sub, t)
    if found is not None:
        witness = frozenset(pool[pos - 1] for pos in found)
        _verify_clique(g, witness)
        return witness
    return None
