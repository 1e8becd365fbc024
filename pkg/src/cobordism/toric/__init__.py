"""Delzant polytopes, face rings and the classes of symplectic toric manifolds."""
from .facering import FaceRing, exhaustive_numbers, ray, to_class
from .polytope import (CORPUS_DIR, DelzantPolytope, PolytopeParseError,
                       PolytopeValidationError, corpus_names, corpus_polytope, cube, interval, load_polytope, make_polytope, parse_polytope, point_polytope,
                       polytope_product, simplex)

__all__ = [
    "CORPUS_DIR", "DelzantPolytope", "corpus_names", "corpus_polytope", "FaceRing", "PolytopeParseError", "PolytopeValidationError", "cube",
    "exhaustive_numbers", "interval", "load_polytope", "make_polytope", "parse_polytope",
    "point_polytope", "polytope_product", "ray", "simplex", "to_class",
]
