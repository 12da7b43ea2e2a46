import itertools
import random

import pytest

from defdom.defense import find_violator
from defdom.errors import InputError
from defdom.graphs import (Graph, complete_graph, cycle_graph, delete_vertices,
                           has_clique, multiset_size, path_graph)
from defdom.matching import counters
from defdom.reductions import (CndInstance, cnd_to_dds, dds_from_graph,
                               enumerate_serious_attacks, extract_deletion_set,
                               proof_defense, solve_cnd_bruteforce)


def k4_pendant():
    # K4 on 1..4 with a pendant 5 hanging off vertex 4
    return Graph(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)])


def tiny_instances():
    yield CndInstance(k4_pendant(), 1, 4)
    yield CndInstance(complete_graph(5), 2, 4)
    g = Graph(6, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)])
    yield CndInstance(g, 2, 4)
    yield CndInstance(cycle_graph(7), 3, 4)


def padded(inst, deletion):
    """Grow a sub-budget deletion set to exactly s vertices."""
    extra = (v for v in sorted(inst.graph.vertices) if v not in deletion)
    out = set(deletion)
    while len(out) < inst.s:
        out.add(next(extra))
    return frozenset(out)


def test_instance_validation():
    with pytest.raises(InputError):
        CndInstance(path_graph(3), 0, 4)
    with pytest.raises(InputError):
        CndInstance(path_graph(3), 4, 4)   # budget larger than the graph
    with pytest.raises(InputError):
        CndInstance(path_graph(3), 1, 0)


def test_construction_preconditions_named():
    with pytest.raises(InputError, match="t >= 4"):
        cnd_to_dds(CndInstance(path_graph(3), 1, 3))
    with pytest.raises(InputError, match="t\\(t-1\\)/2"):
        cnd_to_dds(CndInstance(path_graph(4), 1, 5))


def test_k4_pendant_frozen_shape():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    assert dds.graph.n == 137
    assert dds.graph.edge_count() == 863
    assert dds.k == 6
    assert dds.ell == 39
    lay = dds.layout
    assert len(lay.i2) == 0          # n+s - t(t-1)/2 = 6 - 6
    assert len(lay.q2) == 1          # n+s - (t+1) = 6 - 5
    assert len(lay.i3) == 45         # n+s + ell
    assert len(lay.e_vertex) == 7
    assert all(len(lay.i_v[v]) == 6 and len(lay.ip_v[v]) == 4 for v in range(1, 6))
    attacks = list(enumerate_serious_attacks(dds))
    assert len(attacks) == 7         # C(7,6) edge subsets, I2 empty
    assert all(len(a) == 6 for a in attacks)


def test_ell_modes():
    inst = CndInstance(k4_pendant(), 1, 4)
    assert cnd_to_dds(inst, ell_mode="proof-consistent").ell == 39
    assert cnd_to_dds(inst, ell_mode="literal").ell == 41
    with pytest.raises(InputError):
        cnd_to_dds(inst, ell_mode="bogus")


def test_edge_vertex_wiring():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    lay = dds.layout
    e12 = lay.e_vertex[(1, 2)]
    hood = set(dds.graph.adj[e12])
    v_side = {lay.v_prime[1], lay.v_second[1], lay.v_prime[2], lay.v_second[2]}
    assert v_side <= hood
    # plus the complete-bipartite wiring into the Q2 group
    assert set(lay.q2) <= hood
    assert len(hood) == 4 + len(lay.q2)


def test_forward_direction_certificates():
    for inst in itertools.islice(tiny_instances(), 3):
        deletion = solve_cnd_bruteforce(inst)
        assert deletion is not None
        dds = cnd_to_dds(inst)
        defense = proof_defense(dds, padded(inst, deletion))
        assert multiset_size(defense) == dds.ell
        for attack in enumerate_serious_attacks(dds):
            assert counters(dds.graph, defense, attack)


def test_k4_pendant_full_violator_search():
    inst = CndInstance(k4_pendant(), 1, 4)
    dds = cnd_to_dds(inst)
    defense = proof_defense(dds, solve_cnd_bruteforce(inst))
    assert find_violator(dds.graph, defense, dds.k, strategy="pruned") is None


def test_bad_deletion_leaves_a_serious_attack():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    bad = proof_defense(dds, frozenset({5}))   # pendant: the K4 survives
    missed = [a for a in enumerate_serious_attacks(dds)
              if not counters(dds.graph, bad, a)]
    assert len(missed) == 1
    # the missed attack is exactly the six K4 edge vertices
    expected = {dds.layout.e_vertex[e] for e in [(1, 2), (1, 3), (1, 4),
                                                 (2, 3), (2, 4), (3, 4)]}
    assert missed[0] == frozenset(expected)


def test_roundtrip_on_tiny_instances():
    rng = random.Random(31)
    for inst in tiny_instances():
        dds = cnd_to_dds(inst)
        n = inst.graph.n
        for _ in range(3):
            deletion = frozenset(rng.sample(range(1, n + 1), inst.s))
            defense = proof_defense(dds, deletion)
            assert extract_deletion_set(dds, defense) == deletion


def test_extraction_rejects_foreign_defenses():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    with pytest.raises(InputError):
        extract_deletion_set(dds, {})
    # all defenders piled far away from the per-vertex classes
    with pytest.raises(InputError):
        extract_deletion_set(dds, {dds.layout.i3[0]: 39})


def test_proof_defense_validates_deletion_set():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    with pytest.raises(InputError):
        proof_defense(dds, frozenset())           # wrong size
    with pytest.raises(InputError):
        proof_defense(dds, frozenset({1, 2}))     # wrong size
    with pytest.raises(InputError):
        proof_defense(dds, frozenset({99}))       # not a source vertex


def test_file_reconstruction_equals_original():
    dds = cnd_to_dds(CndInstance(k4_pendant(), 1, 4))
    rebuilt = dds_from_graph(dds.graph, dds.k, dds.ell)
    assert rebuilt.graph == dds.graph
    assert (rebuilt.s, rebuilt.t) == (dds.s, dds.t)
    assert rebuilt.layout == dds.layout
    with pytest.raises(InputError):
        dds_from_graph(dds.graph, dds.k + 1, dds.ell)
    with pytest.raises(InputError):
        dds_from_graph(Graph(2, [(1, 2)]), 1, 1)


def test_solve_cnd_bruteforce_examples():
    # C4 holds no triangle, so the empty deletion already works
    assert solve_cnd_bruteforce(CndInstance(cycle_graph(4), 1, 3)) == frozenset()
    # K4 needs one vertex gone; ties break toward the smallest
    assert solve_cnd_bruteforce(CndInstance(complete_graph(4), 1, 4)) == frozenset({1})
    # K5 cannot be freed of triangles by two deletions
    assert solve_cnd_bruteforce(CndInstance(complete_graph(5), 2, 3)) is None


def test_solve_cnd_agrees_with_generic_clique_search():
    rng = random.Random(32)
    for _ in range(20):
        n = rng.randint(4, 7)
        p = rng.uniform(0.4, 0.9)
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                 if rng.random() < p]
        g = Graph(n, edges)
        s, t = rng.randint(1, 2), rng.randint(3, 4)
        deletion = solve_cnd_bruteforce(CndInstance(g, s, t))
        if deletion is None:
            # every deletion of size <= s leaves some K_t
            for combo in itertools.combinations(g.vertices, s):
                assert has_clique(delete_vertices(g, combo)[0], t)
        else:
            assert len(deletion) <= s
            assert not has_clique(delete_vertices(g, deletion)[0], t)
