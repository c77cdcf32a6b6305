"""Diophantine stability of curves over finite fields."""

from ._core import (
    Error,
    InconsistentError,
    InvariantError,
    ParseError,
    PreconditionError,
    SizeLimitError,
    admissible_pairs,
    basechange_phi,
    carlitz_phi,
    count_points,
    drinfeld_phi,
    ds_check,
    enumerate,
    place_counts,
    places_from_points,
    points_from_places,
    rank3_check,
    reproduce,
    reproduce_targets,
    zeta_from_counts,
    zeta_from_real_weil,
)

__all__ = [
    "Error",
    "InconsistentError",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "SizeLimitError",
    "admissible_pairs",
    "basechange_phi",
    "carlitz_phi",
    "count_points",
    "drinfeld_phi",
    "ds_check",
    "enumerate",
    "place_counts",
    "places_from_points",
    "points_from_places",
    "rank3_check",
    "reproduce",
    "reproduce_targets",
    "zeta_from_counts",
    "zeta_from_real_weil",
]
