"""Exact enumerations of the positive rationals (and of Q(phi)) built from
Stern-type diatomic sequences, with the cross-checks that tie them together."""

from .enumerations import ENUMERATIONS, get_enumeration, index_of, prefix, value_at_index
from .exact import PHI, SQRT2, SQRT3, SQRT5, QuadElem, format_value, parse_value
from .stern import FAMILIES, get_family, seq_prefix, seq_term

__version__ = "0.1.0"

__all__ = [
    "ENUMERATIONS",
    "FAMILIES",
    "PHI",
    "SQRT2",
    "SQRT3",
    "SQRT5",
    "QuadElem",
    "format_value",
    "get_enumeration",
    "get_family",
    "index_of",
    "parse_value",
    "prefix",
    "seq_prefix",
    "seq_term",
    "value_at_index",
]
