"""Counting first-order sentences on sparse graphs."""
from .graph import (
    LabeledGraph,
    VertexOrdering,
    closed_neighborhood,
    cluster_X,
    induced_subgraph,
    wreach,
)
from .formula import CountingSentence, parse_sentence

__all__ = [
    "LabeledGraph",
    "VertexOrdering",
    "closed_neighborhood",
    "cluster_X",
    "induced_subgraph",
    "wreach",
    "CountingSentence",
    "parse_sentence",
]
__version__ = "0.1.0"
