"""Castelnuovo-Mumford regularity of squarefree powers of edge ideals.

Graphs, squarefree monomial ideals, even-connection graphs G^M, an exact
Hochster-formula regularity engine and the whiskered-cycle checks built on top.
"""

from .graph import Graph, cycle, from_edges, path, whisker
from .monomial import MonomialIdeal, edge_ideal, squarefree_power
from .even_connection import even_connected, even_connection_graph
from .regularity import Field, betti_table, regularity_of_graph, regularity_of_ideal
from .verification import formula_value

__all__ = [
    "Field",
    "Graph",
    "MonomialIdeal",
    "betti_table",
    "cycle",
    "edge_ideal",
    "even_connected",
    "even_connection_graph",
    "formula_value",
    "from_edges",
    "path",
    "regularity_of_graph",
    "regularity_of_ideal",
    "squarefree_power",
    "whisker",
]
