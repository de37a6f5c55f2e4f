"""Self-generated elliptic-curve database: rational newforms per level,
curve recovery from period lattices, isogeny closure, and labeling."""

from .newforms import rational_newforms, table_ap
from .recover import RecoveryError, curve_from_newform
from .isogeny import IsogenyError, isogeny_class
from .build import build_level, build_range, write_jsonl

__all__ = [
    "IsogenyError", "RecoveryError", "build_level", "build_range",
    "curve_from_newform", "isogeny_class", "rational_newforms", "table_ap",
    "write_jsonl",
]
