"""Spectral extremal graphs for forbidden star-path forests.

Constructions, closed-form Turán and spectral values, exact containment
tests and small-n exhaustive oracles.
"""

from spextral.graph import Graph, graph6_decode, graph6_encode
from spextral.families import ExtremalFamily, build
from spextral.containment import ForestPattern, contains_forest, is_free
from spextral.spectral import power_iteration

__all__ = [
    "Graph",
    "graph6_encode",
    "graph6_decode",
    "ExtremalFamily",
    "build",
    "ForestPattern",
    "contains_forest",
    "is_free",
    "power_iteration",
]

__version__ = "0.1.0"
