"""Workbench for symmetric algebras presented by biserial quiver data:
exact relation ideals, idempotent contractions, syzygies and periodic
detecting modules."""

from .algebra import (FiniteDimAlgebra, NotFiniteDimensionalError,
                      build_algebra)
from .constructions import (ContractionError, contract, roundtrip_verify,
                            star)
from .quiver import (ArrowClassification, BiserialQuiverData, InputError,
                     Quiver, classify_arrows, classify_vertices, derive_g,
                     orbits, validate)
from .relations import RelationSet, generate_relations, special_paths

__all__ = [
    "ArrowClassification", "BiserialQuiverData", "ContractionError",
    "FiniteDimAlgebra", "InputError", "NotFiniteDimensionalError", "Quiver",
    "RelationSet", "build_algebra", "classify_arrows", "classify_vertices",
    "contract", "derive_g", "generate_relations", "orbits",
    "roundtrip_verify", "special_paths", "star", "validate",
]
