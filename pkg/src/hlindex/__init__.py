"""Median eigenvalues (HL-index) of graphs, cyclic covering graphs and their
spectral factorization, and projective-plane incidence graphs."""

from .graph import Graph, OrientedEdge, adjacency_matrix, bipartition, from_edge_list
from .hl import MedianReport, check_deltamed, classify_mainres, hl_index, is_projective_plane_incidence
from .lifts import CyclicVoltageGraph, build_lift, lift_spectrum_factored, make_cyclic_voltage
from .projective import finite_field, pg2_incidence_graph

__all__ = [
    "CyclicVoltageGraph",
    "Graph",
    "MedianReport",
    "OrientedEdge",
    "adjacency_matrix",
    "bipartition",
    "build_lift",
    "check_deltamed",
    "classify_mainres",
    "finite_field",
    "from_edge_list",
    "hl_index",
    "is_projective_plane_incidence",
    "lift_spectrum_factored",
    "make_cyclic_voltage",
    "pg2_incidence_graph",
]
