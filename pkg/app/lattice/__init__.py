"""Oriented square-lattice geometry."""
from app.lattice.grid import (
    Attachment,
    Boundary,
    Direction,
    Edge,
    Lattice,
    Path,
    build_grid,
    incident_edges,
    path_between,
    plaquette_edges,
)

__all__ = [
    "Attachment",
    "Boundary",
    "Direction",
    "Edge",
    "Lattice",
    "Path",
    "build_grid",
    "incident_edges",
    "path_between",
    "plaquette_edges",
]
