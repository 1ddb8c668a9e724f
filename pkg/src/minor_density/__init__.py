"""Exact edge density of small graphs under taking minors."""

from .canon import CanonicalForm, are_isomorphic, canonical_form, certificate
from .enumerate import EnumerationFilter, GuardrailError, count_graphs, enumerate_graphs
from .fans import FanSpec, apex_fan, build_fan, clique_completion, densest_fan_minor
from .graph import GraphError, SimpleGraph, components, density, is_connected, make_named, parse_named, rank
from .graph6 import decode_graph6, encode_graph6
from .minors import densest_minor, is_density_minimal, is_minor, is_rank_minimal
from .multigraph import Multigraph, mg_densest_minor, mg_density, mg_is_density_minimal
from .spectrum import enumerate_density_minimal, next_density, predicted_low_spectrum

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm", "EnumerationFilter", "FanSpec", "GraphError", "GuardrailError", "Multigraph",
    "SimpleGraph", "apex_fan", "are_isomorphic", "build_fan", "canonical_form", "certificate",
    "clique_completion", "components", "count_graphs", "decode_graph6", "densest_fan_minor",
    "densest_minor", "density", "encode_graph6", "enumerate_density_minimal", "enumerate_graphs",
    "is_connected", "is_density_minimal", "is_minor", "is_rank_minimal", "make_named",
    "mg_densest_minor", "mg_density", "mg_is_density_minimal", "next_density", "parse_named",
    "predicted_low_spectrum", "rank",
]
