"""Small seeded generators and brute-force oracles shared by the tests."""

import itertools
from defdom.graphs import Graph, closed_neighborhood
from defdom.intervals import IntervalInstance


def random_intervals(rng, n_max=8, allow_points=True):
    n = rng.randint(1, n_max)
    values = rng.sample(range(1, 20 * n + 1), 2 * n)
    rows = {}
    for v in range(1, n + 1):
        a, b = values[2 * v - 2], values[2 * v - 1]
        if allow_points and rng.random() < 0.15:
            a = b
        rows[v] = (min(a, b), max(a, b))
    return IntervalInstance(rows)


def dense_intervals(rng, n_max=10, allow_points=False):
    # endpoints packed into a narrow range, so overlaps are the norm
    n = rng.randint(1, n_max)
    values = rng.sample(range(1, 4 * n + 1), 2 * n)
    rows = {}
    for v in range(1, n + 1):
        a, b = values[2 * v - 2], values[2 * v - 1]
        if allow_points and rng.random() < 0.1:
            a = b
        rows[v] = (min(a, b), max(a, b))
    return IntervalInstance(rows)


def random_simple_graph(rng, n_max=8, n_min=1):
    n = rng.randint(n_min, n_max)
    p = rng.uniform(0.15, 0.85)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
             if rng.random() < p]
    return Graph(n, edges)


def random_defense(rng, g, max_copies=2, density=0.5):
    defense = {}
    for v in g.vertices:
        if rng.random() < density:
            defense[v] = rng.randint(1, max_copies)
    return defense


def attacks_up_to(g, k):
    for size in range(1, k + 1):
        yield from itertools.combinations(g.vertices, size)


def hall_ok(g, defense, attack):
    """Independent countering oracle: every attacker subset must see enough
    defender copies in its joint closed neighborhood."""
    attack = list(attack)
    for size in range(1, len(attack) + 1):
        for subset in itertools.combinations(attack, size):
            hood = closed_neighborhood(g, subset)
            copies = sum(c for v, c in defense.items() if v in hood)
            if copies < size:
                return False
    return True


def brute_matching_size(adjacency, num_left):
    """Maximum bipartite matching by exhaustive assignment (tiny inputs)."""
    best = 0
    lefts = list(range(num_left))

    def extend(i, used, size):
        nonlocal best
        best = max(best, size)
        if i == len(lefts) or size + (len(lefts) - i) <= best:
            return
        extend(i + 1, used, size)
        for r in adjacency.get(lefts[i], ()):
            if r not in used:
                extend(i + 1, used | {r}, size + 1)

    extend(0, frozenset(), 0)
    return best


def brute_dominating_number(g):
    for size in range(0, g.n + 1):
        for combo in itertools.combinations(g.vertices, size):
            if closed_neighborhood(g, combo) == frozenset(g.vertices):
                return size
    raise AssertionError("unreachable")


def is_clique(g, members):
    members = sorted(members)
    return all(g.has_edge(u, v)
               for i, u in enumerate(members) for v in members[i + 1:])


def brute_has_clique(g, t):
    if t <= 1:
        return g.n >= t
    return any(is_clique(g, combo)
               for combo in itertools.combinations(g.vertices, t))
