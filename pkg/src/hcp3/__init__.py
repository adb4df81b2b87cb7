"""Conversions from general Hamiltonian cycle instances to cubic ones, with an
exact search oracle to check them."""

from .graph_core import (
    DIRECTED,
    UNDIRECTED,
    DegreeProfile,
    Graph,
    GraphError,
    Provenance,
    build_graph,
    compose_provenance,
    degrees,
    export_dot,
    parse_graph,
    project_cycle,
    serialize_graph,
)

__version__ = "0.1.0"

__all__ = [
    "DIRECTED",
    "UNDIRECTED",
    "DegreeProfile",
    "Graph",
    "GraphError",
    "Provenance",
    "build_graph",
    "compose_provenance",
    "degrees",
    "export_dot",
    "parse_graph",
    "project_cycle",
    "serialize_graph",
]
