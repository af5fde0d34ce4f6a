"""Flips between plane almost-perfect matchings on odd point sets."""

from .geometry import GeneralPositionError, Point, PointSet, Segment, parse_points
from .matching import Flip, FlipRule, IllegalFlipError, Matching, apply_flip, canonical_matching, legal_flips
from .flipseq import FlipSequence, convex_route_to_hull, route, route_unmatched, to_canonical, validate_sequence
from .flipgraph import analysis_report, build_flip_graph, diameter, enumerate_matchings

__version__ = "0.1.0"

__all__ = [
    "GeneralPositionError",
    "Point",
    "PointSet",
    "Segment",
    "parse_points",
    "Flip",
    "FlipRule",
    "IllegalFlipError",
    "Matching",
    "apply_flip",
    "canonical_matching",
    "legal_flips",
    "FlipSequence",
    "convex_route_to_hull",
    "route",
    "route_unmatched",
    "to_canonical",
    "validate_sequence",
    "analysis_report",
    "build_flip_graph",
    "diameter",
    "enumerate_matchings",
]
