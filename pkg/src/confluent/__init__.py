"""Confluent drawings of non-planar graphs via clique and biclique merging."""

from .graph import Graph, parse_graph, format_graph, generate
from .planarity import is_planar, embed
from .reduction import ReductionResult, expand, reduce_directed, reduce_undirected
from .tracks import TrackNetwork, from_reduction, realized_edges

__all__ = [
    "Graph",
    "parse_graph",
    "format_graph",
    "generate",
    "is_planar",
    "embed",
    "ReductionResult",
    "expand",
    "reduce_directed",
    "reduce_undirected",
    "TrackNetwork",
    "from_reduction",
    "realized_edges",
]
