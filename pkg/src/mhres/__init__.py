"""Determinantal formulae and resultant matrices for scaled multihomogeneous systems."""
from .combinatorics import (InvalidSystemError, SystemData, critical_degree, resultant_degrees,
                            validate_system)
from .complex import WeymanComplex, make_complex
from .search import det_boxes, enumerate_det_vectors, has_deter

__all__ = [
    "InvalidSystemError", "SystemData", "critical_degree", "resultant_degrees", "validate_system",
    "WeymanComplex", "make_complex", "det_boxes", "enumerate_det_vectors", "has_deter",
]
