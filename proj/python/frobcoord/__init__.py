"""Pregroup grammaticality and Frobenius coordination semantics."""

from ._core import (
    FrobcoordError,
    Lexicon,
    adjoint_left,
    adjoint_right,
    coordinate,
    coordinator_tensor,
    coordinator_type,
    enumerate_reductions,
    parse_type,
    reduce,
    selftest,
    stripping_sentence,
)

__all__ = [
    "FrobcoordError",
    "Lexicon",
    "adjoint_left",
    "adjoint_right",
    "coordinate",
    "coordinator_tensor",
    "coordinator_type",
    "enumerate_reductions",
    "parse_type",
    "reduce",
    "selftest",
    "stripping_sentence",
]
