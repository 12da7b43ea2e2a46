"""Defensive graph domination: verification, solvers, and reductions.

A defense places guard copies on vertices; an attack picks up to k distinct
vertices.  The defense is good when every attack can be countered by
matching each attacker to its own guard copy in the attacker's closed
neighborhood.  This package verifies defenses, solves small instances
exactly, runs the fast greedy for interval graphs, and builds the two
hardness reductions with checkable certificates.
"""

from defdom.defense import Violator, find_violator, good_defense, hall_deficiency
from defdom.errors import InputError
from defdom.graphs import Graph, delete_vertices, find_clique, has_clique
from defdom.intervals import (IntervalInstance, greedy_defense,
                              intersection_graph, normalize, properize)
from defdom.matching import counters
from defdom.solvers import (domination_number, min_constrained_multiset,
                            min_multiset_defense, min_set_defense)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InputError",
    "IntervalInstance",
    "Violator",
    "counters",
    "delete_vertices",
    "domination_number",
    "find_clique",
    "find_violator",
    "good_defense",
    "greedy_defense",
    "hall_deficiency",
    "has_clique",
    "intersection_graph",
    "min_constrained_multiset",
    "min_multiset_defense",
    "min_set_defense",
    "normalize",
    "properize",
    "__version__",
]
