"""Exact arithmetic foundation: fields, polynomials, ideals, presented algebras."""

from .algebra import Ideal, PresentedAlgebra, RingMap
from .budget import Budget, limit
from .elim import Subalgebra, kernel_generators, kernel_of_map, subalgebra_contains
from .field import GF, QQ, CoeffField
from .fq import FiniteField, FqPoint, finite_field, map_point, rational_points
from .ops import extension, groebner, ideal_contains, is_unit, jacobian_etale_check, prime_avoidance
from .poly import Poly, PolyRing, parse_poly
from .tensor import TensorProduct, projection_map, tensor, tensor_maps, tensor_over, tensor_power

__all__ = [
    "Budget", "CoeffField", "FiniteField", "FqPoint", "GF", "Ideal", "Poly", "PolyRing",
    "PresentedAlgebra", "QQ", "RingMap", "Subalgebra", "TensorProduct", "extension",
    "finite_field", "groebner", "ideal_contains", "is_unit", "jacobian_etale_check",
    "kernel_generators", "kernel_of_map", "limit", "map_point", "parse_poly", "prime_avoidance",
    "projection_map", "rational_points", "subalgebra_contains", "tensor", "tensor_maps",
    "tensor_over", "tensor_power",
]
