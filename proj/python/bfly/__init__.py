"""Butterfly S-box construction and analysis over GF(2^k)^2."""

from ._core import (
    BflyError,
    Butterfly,
    Field,
    Variant,
    analyze_butterfly,
    analyze_lut,
    apn_search,
    inverse_exponent,
    permutation_scan,
    run_lemma_suite,
)

__all__ = [
    "BflyError",
    "Butterfly",
    "Field",
    "Variant",
    "analyze_butterfly",
    "analyze_lut",
    "apn_search",
    "inverse_exponent",
    "permutation_scan",
    "run_lemma_suite",
]
