"""Vertex and edge connectivity of graphs drawn with crossings.

The public API re-exported here covers the embedded-graph model, the
radial planarization, ribbon radii, the connectivity drivers and the
brute-force oracles used to check them.
"""
from __future__ import annotations

from .connectivity import (ConnectivityResult, CosepTriple, check_cosep, edge_connectivity,
                           kernel_diameter, triple_from_cut, vertex_connectivity)
from .errors import (EGFParseError, InternalError, NearPlanarError, PreconditionError,
                     ValidationError)
from .graph import (AbstractGraph, EmbeddedGraph, ParentEdge, faces, parse_egf, read_egf,
                    serialize_egf, simple_graph_view, subdivide, validate)
from .oracle import (OracleReport, is_minimal_cut, oracle_edge_connectivity,
                     oracle_ribbon_radius, oracle_vertex_connectivity)
from .radial import RadialPlanarization, ball, boundary, build_lambda, face_distance
from .ribbon import RibbonRadiusResult, ribbon_radius, test_mu_at_most

__version__ = "0.1.0"

__all__ = [
    "AbstractGraph", "ConnectivityResult", "CosepTriple", "EGFParseError", "EmbeddedGraph",
    "InternalError", "NearPlanarError", "OracleReport", "ParentEdge", "PreconditionError",
    "RadialPlanarization", "RibbonRadiusResult", "ValidationError", "ball", "boundary",
    "build_lambda", "check_cosep", "edge_connectivity", "face_distance", "faces",
    "is_minimal_cut", "kernel_diameter", "oracle_edge_connectivity", "oracle_ribbon_radius",
    "oracle_vertex_connectivity", "parse_egf", "read_egf", "ribbon_radius", "serialize_egf",
    "simple_graph_view", "subdivide", "test_mu_at_most", "triple_from_cut", "validate",
    "vertex_connectivity",
]
