"""Exact attractor censuses for Boolean automata cycles and double-cycles,
with the matching forbidden-factor necklace combinatorics."""

from ._core import (
    canonical_rotation,
    census,
    closed_form_X,
    closed_form_omega,
    decode_necklace,
    divisors,
    is_admissible,
    orbit_correspondence_check,
    lucas,
    lyndon_count,
    map_necklace,
    mobius,
    necklace_count,
    perrin,
    primitive_period,
    attractor_bound_verdict,
    totient,
    verify_injection,
    word_census,
)

__all__ = [
    "canonical_rotation",
    "census",
    "closed_form_X",
    "closed_form_omega",
    "decode_necklace",
    "divisors",
    "is_admissible",
    "orbit_correspondence_check",
    "lucas",
    "lyndon_count",
    "map_necklace",
    "mobius",
    "necklace_count",
    "perrin",
    "primitive_period",
    "attractor_bound_verdict",
    "totient",
    "verify_injection",
    "word_census",
]
