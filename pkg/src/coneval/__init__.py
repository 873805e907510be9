"""Exact valuations on polyhedral cones, fans and central hyperplane arrangements."""

from .arrangements import Arrangement, CharPoly, char_poly_delres, flats_lattice, regions, whitney_numbers
from .cones import Cone, face_lattice, normal_cone, polar, tangent_cone
from .exact_linalg import Subspace
from .fans import Fan, validate_fan
from .indicator import IndicatorElement, SimpleClass, Vk, Vk_arrangement, equal, simple_equal
from .intrinsic import fan_intrinsic_volumes, mc_intrinsic_volumes
from .projection import metric_projection, moreau_fan
from .reports import Report

__all__ = [
    "Arrangement",
    "CharPoly",
    "Cone",
    "Fan",
    "IndicatorElement",
    "Report",
    "SimpleClass",
    "Subspace",
    "Vk",
    "Vk_arrangement",
    "char_poly_delres",
    "equal",
    "face_lattice",
    "fan_intrinsic_volumes",
    "flats_lattice",
    "mc_intrinsic_volumes",
    "metric_projection",
    "moreau_fan",
    "normal_cone",
    "polar",
    "regions",
    "simple_equal",
    "tangent_cone",
    "validate_fan",
    "whitney_numbers",
]
