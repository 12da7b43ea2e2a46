import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defdom.defense import find_violator, good_defense, hall_deficiency
from defdom.errors import InputError
from defdom.graphs import multiset_size
from defdom.intervals import (Block, IntervalInstance, _endpoint_ranks, block,
                              greedy_defense, greedy_defense_reference,
                              intersection_graph, is_block_defense, is_proper,
                              normalize, properize, validate)
from defdom.solvers import min_multiset_defense
from helpers import attacks_up_to, dense_intervals, random_intervals


def test_instance_validation():
    with pytest.raises(InputError):
        IntervalInstance({1: (2, 1)})
    with pytest.raises(InputError):
        IntervalInstance({2: (0, 1)})           # ids must start at 1
    with pytest.raises(InputError):
        IntervalInstance({1: (0.5, 1.0)})       # floats rejected
    inst = IntervalInstance({1: (0, 2), 2: (Fraction(5, 2), 4)})
    assert inst.interval(2) == (Fraction(5, 2), Fraction(4))


def test_endpoint_distinctness():
    validate(IntervalInstance({1: (0, 1), 2: (2, 3)}))
    validate(IntervalInstance({1: (5, 5)}))     # point interval is fine
    with pytest.raises(InputError):
        validate(IntervalInstance({1: (0, 2), 2: (2, 3)}))
    with pytest.raises(InputError):
        validate(IntervalInstance({1: (1, 1), 2: (1, 4)}))


def test_intersection_graph_matches_pairwise_checks():
    rng = random.Random(21)
    for _ in range(60):
        inst = random_intervals(rng)
        g = intersection_graph(inst)
        for u, v in itertools.combinations(inst.vertices, 2):
            expected = (inst.lo[u] <= inst.hi[v] and inst.lo[v] <= inst.hi[u])
            assert g.has_edge(u, v) == expected


def test_normalize_rejects_pure_touch():
    # intervals meeting only at a shared endpoint get separated, and since
    # that would drop their edge the repair is refused
    with pytest.raises(InputError):
        normalize(IntervalInstance({1: (0, 2), 2: (2, 3)}))
    with pytest.raises(InputError):
        normalize(IntervalInstance({1: (0, 4), 2: (4, 9), 3: (2, 6)}))


def test_normalize_fixes_shared_endpoints_under_overlap():
    # duplicates survive separation because every overlap has positive width
    inst = IntervalInstance({1: (0, 5), 2: (0, 3), 3: (1, 5)})
    fixed = normalize(inst)
    validate(fixed)
    assert intersection_graph(fixed) == intersection_graph_unchecked(inst)


def intersection_graph_unchecked(inst):
    from defdom.graphs import Graph
    edges = [(u, v) for u, v in itertools.combinations(inst.vertices, 2)
             if inst.lo[u] <= inst.hi[v] and inst.lo[v] <= inst.hi[u]]
    return Graph(inst.n, edges)


def test_normalize_keeps_valid_instances_equivalent():
    rng = random.Random(22)
    for _ in range(40):
        inst = random_intervals(rng)
        fixed = normalize(inst)
        validate(fixed)
        assert intersection_graph(fixed) == intersection_graph(inst)
        assert normalize(fixed) == fixed   # idempotent once separated


def test_properize_moves_contained_defenders():
    inst = IntervalInstance({1: (0, 10), 2: (1, 3), 3: (4, 6)})
    out = properize(inst, {2: 2, 3: 1})
    assert out == {1: 3}
    assert is_proper(inst, out)


def test_properize_prefers_rightmost_container():
    inst = IntervalInstance({1: (0, 7), 2: (1, 9), 3: (2, 5)})
    out = properize(inst, {3: 1})
    assert out == {2: 1}   # container reaching furthest right wins


def test_properize_preserves_size_and_counterings():
    rng = random.Random(23)
    for _ in range(60):
        inst = random_intervals(rng, n_max=7)
        g = intersection_graph(inst)
        defense = {}
        for v in inst.vertices:
            if rng.random() < 0.5:
                defense[v] = rng.randint(1, 2)
        if not defense:
            continue
        moved = properize(inst, defense)
        assert multiset_size(moved) == multiset_size(defense)
        assert is_proper(inst, moved)
        for attack in attacks_up_to(g, 2):
            if hall_deficiency(g, defense, attack) <= 0:
                assert hall_deficiency(g, moved, attack) <= 0


def test_block_and_block_defense():
    inst = IntervalInstance({1: (0, 4), 2: (1, 6), 3: (3, 8)})
    b = block(inst, 6, 2)
    assert b == Block(Fraction(6), 2, frozenset({1, 2}))
    with pytest.raises(InputError):
        block(inst, 5, 1)       # not a right endpoint
    with pytest.raises(InputError):
        block(inst, 4, 2)       # only one interval closed by 4
    assert is_block_defense(inst, {2: 2, 3: 1}, 2)
    assert not is_block_defense(inst, {3: 1}, 2)


def test_endpoint_ranks_preserve_order_and_thicken_points():
    inst = IntervalInstance({1: (0, 10), 2: (3, 3), 3: (5, 7)})
    l_rank, r_rank = _endpoint_ranks(inst)
    assert l_rank[2] + 1 == r_rank[2]          # the point got positive width
    assert l_rank[1] < l_rank[2] < l_rank[3]
    assert r_rank[2] < l_rank[3] < r_rank[3] < r_rank[1]


def test_greedy_star_and_disjoint_examples():
    # one long interval under five short ones: the hub absorbs both copies
    star = IntervalInstance({1: (0, 11), 2: (1, 2), 3: (3, 4), 4: (5, 6),
                             5: (7, 8), 6: (9, 10)})
    d = greedy_defense(star, 2)
    assert multiset_size(d) == 2
    assert good_defense(intersection_graph(star), d, 2)

    apart = IntervalInstance({v: (10 * v, 10 * v + 1) for v in range(1, 6)})
    d = greedy_defense(apart, 1)
    assert multiset_size(d) == 5


def test_greedy_fast_equals_reference():
    rng = random.Random(24)
    for _ in range(150):
        inst = random_intervals(rng)
        k = rng.randint(1, 4)
        assert greedy_defense(inst, k) == greedy_defense_reference(inst, k)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 3))
def test_greedy_output_is_good_and_optimal(seed, k):
    inst = dense_intervals(random.Random(seed), n_max=7)
    defense = greedy_defense(inst, k)
    g = intersection_graph(inst)
    assert find_violator(g, defense, k, strategy="exhaustive") is None
    assert multiset_size(defense) == min_multiset_defense(g, k).optimum


def test_greedy_output_is_block_defense_and_proper():
    rng = random.Random(25)
    for _ in range(40):
        inst = random_intervals(rng, n_max=7)
        k = rng.randint(1, 3)
        defense = greedy_defense(inst, k)
        if defense:
            assert is_block_defense(inst, defense, k)


def test_greedy_rejects_duplicate_endpoints_and_bad_k():
    inst = IntervalInstance({1: (0, 2), 2: (2, 4)})
    with pytest.raises(InputError):
        greedy_defense(inst, 1)
    with pytest.raises(InputError):
        greedy_defense(IntervalInstance({1: (0, 1)}), 0)


def test_span_monotone_deficiency():
    """A larger attack confined to a smaller covered region is also bad.

    If attack A1 is uncountered and A2 has at least as many attackers whose
    intervals all lie inside the union covered by A1, then A2 is uncountered
    too.  (Union of intervals, not their bounding interval.)
    """
    rng = random.Random(26)
    checked = 0
    while checked < 50:
        inst = random_intervals(rng, n_max=7)
        if inst.n < 2:
            continue
        g = intersection_graph(inst)
        defense = {v: 1 for v in inst.vertices if rng.random() < 0.4}
        k = rng.randint(1, 3)
        violator = find_violator(g, defense, k, strategy="exhaustive")
        if violator is None:
            continue
        a1 = violator.attack
        union = [(inst.lo[v], inst.hi[v]) for v in a1]
        inside = [w for w in inst.vertices
                  if any(lo <= inst.lo[w] and inst.hi[w] <= hi for lo, hi in union)
                  or w in a1]
        for size in range(len(a1), min(len(inside), len(a1) + 1) + 1):
            for a2 in itertools.combinations(sorted(inside), size):
                covered = all(
                    any(lo <= inst.lo[w] and inst.hi[w] <= hi for lo, hi in union)
                    for w in a2)
                if covered:
                    assert hall_deficiency(g, defense, a2) > 0
        checked += 1
