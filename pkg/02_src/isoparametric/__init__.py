"""
Isoparametric family catalog: focal submanifolds, multiplicities, Wang's criterion.
"""
from .catalog import (
    FamilyRecord,
    FocalDescriptor,
    InvalidFamilyError,
    Provenance,
    Side,
    WangClassification,
    alpha_sq,
    ambient_dimension,
    catalog_dump,
    clifford_delta,
    enumerate_g4_families,
    focal_descriptor,
    g3_g6_families,
    great_sphere,
    is_admissible,
    wang_minimizing,
)

__all__ = [
    "FocalDescriptor",
    "FamilyRecord",
    "WangClassification",
    "Side",
    "Provenance",
    "InvalidFamilyError",
    "alpha_sq",
    "ambient_dimension",
    "catalog_dump",
    "clifford_delta",
    "enumerate_g4_families",
    "focal_descriptor",
    "great_sphere",
    "is_admissible",
    "g3_g6_families",
    "wang_minimizing",
]
