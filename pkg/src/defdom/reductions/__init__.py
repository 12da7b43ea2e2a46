"""Hardness reductions with executable certificate transformations."""

from defdom.reductions.dds import (
    ELL_MODES,
    CndInstance,
    DdsInstance,
    cnd_to_dds,
    dds_from_graph,
    enumerate_serious_attacks,
    extract_deletion_set,
    proof_defense,
    solve_cnd_bruteforce,
)
from defdom.reductions.sat import (
    SatCnd,
    deletion_to_valuation,
    e2sat_to_cnd,
    kt_witness_from_y,
    sat_cnd_from_graph,
    typed_clique_audit,
    valuation_to_deletion,
)

__all__ = [
    "ELL_MODES",
    "CndInstance",
    "DdsInstance",
    "SatCnd",
    "cnd_to_dds",
    "dds_from_graph",
    "deletion_to_valuation",
    "e2sat_to_cnd",
    "enumerate_serious_attacks",
    "extract_deletion_set",
    "kt_witness_from_y",
    "proof_defense",
    "sat_cnd_from_graph",
    "solve_cnd_bruteforce",
    "typed_clique_audit",
    "valuation_to_deletion",
]
