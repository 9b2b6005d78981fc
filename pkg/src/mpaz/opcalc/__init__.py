"""Typed operator calculus: induction, restriction, transfer and twists."""

from .dsl import DSLSyntaxError, parse
from .expr import D, Ind, OpExpr, OpTypeError, Res, T, Z, canonical_word, so_group, word_str
from .groups import MetaplecticSp, MetaplecticType, Mp, SOPair
from .rewrite import (
    CommutationReport,
    StuckPattern,
    check_commutation,
    expand_D,
    expand_macros,
    normalize,
)

__all__ = [
    "CommutationReport", "D", "DSLSyntaxError", "Ind", "MetaplecticSp", "MetaplecticType",
    "Mp", "OpExpr", "OpTypeError", "Res", "SOPair", "StuckPattern", "T", "Z",
    "canonical_word", "check_commutation", "expand_D", "expand_macros", "normalize",
    "parse", "so_group", "word_str",
]
