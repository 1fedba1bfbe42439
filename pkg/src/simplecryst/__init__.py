"""Simple crystallizations of 4-manifolds: colored graphs, cell complexes, moves and censuses."""

from .catalog import catalog
from .complex import CellComplex, dual_graph_coloring, realize, validate
from .graph import ColoredGraph, are_isomorphic, canonical_code, from_edges, g_count, new_graph
from .invariants import (check_3manifold_crystallization, check_4manifold_crystallization,
                         check_sphere3, simple_report, simplicity)
from .surgery import connected_sum, iterated_sum

__all__ = [
    "CellComplex", "ColoredGraph", "are_isomorphic", "canonical_code", "catalog",
    "check_3manifold_crystallization", "check_4manifold_crystallization", "check_sphere3",
    "connected_sum", "dual_graph_coloring", "from_edges", "g_count", "iterated_sum",
    "new_graph", "realize", "simple_report", "simplicity", "validate",
]
