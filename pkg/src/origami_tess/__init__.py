"""Exact computations on square-tiled surfaces with marked points:
saddle connections, embedded triangles, the associated tessellation of the
hyperbolic plane, the graph of periodic directions and Veech groups."""

from .core import (
    INF,
    DomainError,
    GroupElement,
    Origami,
    Slope,
    apply_matrix,
    build_origami,
    canonical_form,
    is_isomorphic,
    matrix_to_word,
    parse_slope,
    slope,
    vertex_classes,
)

__all__ = [
    "INF",
    "DomainError",
    "GroupElement",
    "Origami",
    "Slope",
    "apply_matrix",
    "build_origami",
    "canonical_form",
    "is_isomorphic",
    "matrix_to_word",
    "parse_slope",
    "slope",
    "vertex_classes",
]

__version__ = "0.1.0"
