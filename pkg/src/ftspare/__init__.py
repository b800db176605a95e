"""Fault-tolerant supergraphs, graph automorphism groups and k-homogeneous actions."""

from .autgroup import AutomorphismGroupResult, automorphism_group, is_automorphism, max_homogeneity
from .fault import (
    RealizationCheck,
    ReconfigPlan,
    build_global_sparing,
    find_reconfiguration,
    homogeneity_spectrum_report,
    is_k_fault_tolerant_realization,
)
from .graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    degree_sequence,
    delete_vertices,
    emit_graph6,
    hypercube,
    induced_subgraph,
    make_graph,
    parse_graph6,
)
from .perm import Permutation, PermGroup, group_order, is_k_homogeneous, is_k_transitive, parse_cycles
from .subiso import contains_subgraph, contains_subgraph_after_faults

__version__ = "0.1.0"
