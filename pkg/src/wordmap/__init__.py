"""Exact distributions of word maps over finite groups."""

from .engine import (
    DistributionSet,
    FiberDistribution,
    WordMapGroup,
    distribution_set,
    enumerate_wordmap_group,
    fiber_distribution,
    word_function_table,
)
from .errors import WordmapError
from .groups import GroupTable, build_from_cayley, builtin_group
from .words import Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "DistributionSet",
    "FiberDistribution",
    "GroupTable",
    "Word",
    "WordMapGroup",
    "WordmapError",
    "build_from_cayley",
    "builtin_group",
    "distribution_set",
    "enumerate_wordmap_group",
    "fiber_distribution",
    "parse_word",
    "word_function_table",
    "__version__",
]
