"""Homology of matched pairs of finite categories and of graphs of odometers."""

__version__ = "0.1.0"

from .abelian import AbelianGroup, homology, homology_groups
from .category import FiniteCategory, validate_category
from .errors import DegreeTooLarge, InputError, ValidationError, ZSError
from .matched_pair import MatchedPair, validate_matched_pair, zs_category

__all__ = [
    "AbelianGroup",
    "DegreeTooLarge",
    "FiniteCategory",
    "InputError",
    "MatchedPair",
    "ValidationError",
    "ZSError",
    "homology",
    "homology_groups",
    "validate_category",
    "validate_matched_pair",
    "zs_category",
]
