"""Geometric spanners of bounded tree-width, with exact dilation and tree-width oracles."""
from twspanner.core_graph import (
    DilationReport,
    GeoGraph,
    GeometryError,
    PointSet,
    dilation,
    distance,
    is_plane_drawing,
    max_degree,
    shortest_paths_from,
)
from twspanner.kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DilationReport",
    "GeoGraph",
    "GeometryError",
    "PointSet",
    "dilation",
    "distance",
    "is_plane_drawing",
    "max_degree",
    "shortest_paths_from",
]
