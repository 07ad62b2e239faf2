"""Exact planar distance geometry over F_p and the kinematic map of its motion group."""

__version__ = "0.1.0"

from .ffield import FieldCtx, FieldScalar, field_ctx, quadratic_character, sqrt_mod
from .plane import (Circle, Line, PlanePoint, RigidMotion, Segment, apply, bisector, compose,
                    distance, is_isotropic, reflect, rigid_motion_between, unit_circle)
from .stats import PointSet

__all__ = [
    "Circle", "FieldCtx", "FieldScalar", "Line", "PlanePoint", "PointSet", "RigidMotion", "Segment",
    "apply", "bisector", "compose", "distance", "field_ctx", "is_isotropic", "quadratic_character",
    "reflect", "rigid_motion_between", "sqrt_mod", "unit_circle",
]
