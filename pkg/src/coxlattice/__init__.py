"""Exact computations with finite real reflection groups.

The main entry points are :func:`build` for the root system data,
:func:`group` for the group itself and :func:`interval` for ``[I, gamma]``.
"""

from .absorder import GroupElement, IntervalPoset, ReflectionGroup, group, interval, kreweras, leq, reflection_set
from .cluster import ClusterData, build_GA, isomorphism_check
from .complexes import FlagComplex, build_EX, build_X, build_X_sigma, first_facet, simple_system, sphere_check
from .errors import CoxlatticeError, FieldMismatchError, NotInIntervalError, TypeParseError, VerificationError
from .lattice import MeetJoin, join, meet, verify_lattice
from .rootsystem import build, parse_type, steinberg, bipartition, dot_table
from .scalar import number_field

__all__ = [
    "GroupElement", "IntervalPoset", "ReflectionGroup", "group", "interval", "kreweras", "leq",
    "reflection_set", "ClusterData", "build_GA", "isomorphism_check", "FlagComplex", "build_EX", "build_X",
    "build_X_sigma", "first_facet", "simple_system", "sphere_check", "CoxlatticeError", "FieldMismatchError",
    "NotInIntervalError", "TypeParseError", "VerificationError", "MeetJoin", "meet", "join", "verify_lattice", "build",
    "parse_type", "steinberg", "bipartition", "dot_table", "number_field",
]
