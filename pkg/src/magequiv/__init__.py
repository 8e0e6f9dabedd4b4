"""Markov equivalence of maximal ancestral graphs and ADMGs via heads and tails."""

__version__ = "0.1.0"

from .equivalence import (
    EquivalenceReport, equiv_admgs, equiv_mags, equiv_signature, equiv_theorem31, equivalent,
    msep_adjacent,
)
from .graph import (
    CycleError, EdgeMark, GraphError, GuardError, MixedGraph, is_mag, parse_graph, read_graph,
    serialize_graph, validate_ancestral, validate_maximal,
)
from .heads import (
    ParamSet, algorithm1, enumerate_heads, in_param_set, is_head, param_set_full, s3_brute,
    s3_tilde_brute, tail,
)
from .msep import find_discriminating_paths, m_connected_oracle, m_separated, sep_signature
from .opcount import OpCounter
from .projection import algorithm2, inducing_path_exists, project_latent

__all__ = [
    "CycleError", "EdgeMark", "EquivalenceReport", "GraphError", "GuardError", "MixedGraph",
    "OpCounter", "ParamSet", "algorithm1", "algorithm2", "enumerate_heads", "equiv_admgs",
    "equiv_mags", "equiv_signature", "equiv_theorem31", "equivalent", "find_discriminating_paths",
    "in_param_set", "inducing_path_exists", "is_head", "is_mag", "m_connected_oracle",
    "m_separated", "msep_adjacent", "param_set_full", "parse_graph", "project_latent",
    "read_graph", "s3_brute", "s3_tilde_brute", "sep_signature", "serialize_graph", "tail",
    "validate_ancestral", "validate_maximal",
]
