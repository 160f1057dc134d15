"""Holographic text-to-scene blending."""

from ._scriptwriter import (  # noqa: F401
    Codebook,
    HolographicMemory,
    Lexicon,
    ScriptWriterError,
    build_ontology,
    convolve,
    correlate,
    dk_statistics,
    imagine,
    intensity,
    parse_text,
    random_vector,
    similarity,
    superpose,
)

__version__ = "0.1.0"
