"""Exact algorithms for domination and cut problems on chordal graphs of bounded leafage."""

__version__ = "0.1.0"

from .certify import CertificationError, Solution
from .domset_fpt import RedBlueInstance, solve_rbds
from .domset_hfree import PartitionCapError, solve_rbds_hfree
from .graph import (
    Graph,
    NotChordalError,
    TreeRepresentation,
    build_tree_representation,
    find_induced_h_ell,
    is_chordal,
    validate_tree_representation,
)
from .multicut import MulticutInstance, solve_multicut_xp
from .multiway_cut import solve_mwc
from .variants import (
    ConnectedRbdsInstance,
    solve_cds,
    solve_connected_rbds,
    solve_ds,
    solve_steiner,
)

__all__ = [
    "CertificationError",
    "ConnectedRbdsInstance",
    "Graph",
    "MulticutInstance",
    "NotChordalError",
    "PartitionCapError",
    "RedBlueInstance",
    "Solution",
    "TreeRepresentation",
    "__version__",
    "build_tree_representation",
    "find_induced_h_ell",
    "is_chordal",
    "solve_cds",
    "solve_connected_rbds",
    "solve_ds",
    "solve_mwc",
    "solve_multicut_xp",
    "solve_rbds",
    "solve_rbds_hfree",
    "solve_steiner",
    "validate_tree_representation",
]
