"""Exact topological-vertex computations of open and closed BPS invariants."""

from .bps import (
    BPSTable,
    Verdict,
    closed_gv,
    disk_specialize,
    extract_bps,
    g_function,
    h_series,
    lmov_roundtrip,
    moebius,
)
from .geometry import builtin, builtin_geometries, emit_geometry, parse_geometry, resolve_geometry
from .graph import EffClass, FTCYGraph, fiber_enumerate
from .openclosed import ToricFan, BraneSpec, build_fourfold, build_relative_Y, validate_cy_fan
from .partitions import Partition, PartitionTuple, conjugate, enumerate_partitions, kappa, z_factor
from .qalgebra import GaussRational, HalfLaurent, RatFuncQ, bracket, lt_class_test, to_t
from .symfunc import elementary_spec, mn_character, skew_schur_spec
from .vertex import connected_F, open_gw, three_point_W, z_amplitude

__version__ = "0.1.0"

__all__ = [
    "BPSTable",
    "BraneSpec",
    "EffClass",
    "FTCYGraph",
    "GaussRational",
    "HalfLaurent",
    "Partition",
    "PartitionTuple",
    "RatFuncQ",
    "ToricFan",
    "Verdict",
    "bracket",
    "build_fourfold",
    "build_relative_Y",
    "builtin",
    "builtin_geometries",
    "closed_gv",
    "conjugate",
    "connected_F",
    "disk_specialize",
    "elementary_spec",
    "emit_geometry",
    "enumerate_partitions",
    "extract_bps",
    "fiber_enumerate",
    "g_function",
    "h_series",
    "kappa",
    "lmov_roundtrip",
    "lt_class_test",
    "mn_character",
    "moebius",
    "open_gw",
    "parse_geometry",
    "resolve_geometry",
    "skew_schur_spec",
    "three_point_W",
    "to_t",
    "validate_cy_fan",
    "z_amplitude",
    "z_factor",
]
