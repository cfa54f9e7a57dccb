"""Exact decompositions of braid and augmentation varieties.

The package computes, in exact arithmetic over rational function fields or
prime fields:

- normal rulings of the (-1)-closure of beta*Delta and their point counts,
- distinguished sequences and Deodhar piece shapes,
- right simplifying morphisms (combinatorial weaves), their trivial
  monodromy charts, and the induced partition of the braid variety,
- Morse-complex-sequence sweeps (A-form <-> SR-form) and the rational
  coordinate change between chart and ruling coordinates,
- s-variables and cluster variables of the initial seed,
- Lusztig cycles, Y-trees, cycle deletion and cycle decomposability,
- brute-force finite-field point counts (compiled kernel with pure
  fallback) and end-to-end decomposition verification.
"""

from .braids import BraidWord, demazure_product, half_twist, parse_braid
from .counting import BACKEND, brute_force_count, verify_decomposition
from .fields import FunctionField, PrimeField
from .rulings import NormalRuling, enumerate_rulings, maximal_ruling, ruling_point_count
from .deodhar import enumerate_distinguished, deodhar_point_count
from .weaves import Morphism, build_right_simplifying, classify_point, chart_embed

__all__ = [
    "BACKEND",
    "BraidWord",
    "FunctionField",
    "Morphism",
    "NormalRuling",
    "PrimeField",
    "brute_force_count",
    "build_right_simplifying",
    "chart_embed",
    "classify_point",
    "demazure_product",
    "deodhar_point_count",
    "enumerate_distinguished",
    "enumerate_rulings",
    "half_twist",
    "maximal_ruling",
    "parse_braid",
    "ruling_point_count",
    "verify_decomposition",
]

__version__ = "0.1.0"
