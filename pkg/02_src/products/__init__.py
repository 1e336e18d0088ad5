"""
Minimal products of focal submanifolds: shape-norm suprema and normal-radius bounds.
"""
from .minimal_product import (
    LedgerEntry,
    NormalRadiusBound,
    ProductError,
    ProductSpec,
    UnsupportedFactorError,
    euler_normal_trace,
    minimal_product,
    product_normal_radius_lb,
    shape_sup_sq,
)
from .normal_radius import (
    AppendixDomainError,
    BlockBound,
    CandidateCase,
    NormalRadiusCandidate,
    appendix_grid_check,
    appendix_integer_inequality,
    appendix_min_inequality,
    candidate_minimum,
    normal_radius_candidates,
)

__all__ = [
    "ProductSpec",
    "NormalRadiusBound",
    "LedgerEntry",
    "ProductError",
    "UnsupportedFactorError",
    "minimal_product",
    "product_normal_radius_lb",
    "shape_sup_sq",
    "euler_normal_trace",
    "BlockBound",
    "CandidateCase",
    "NormalRadiusCandidate",
    "AppendixDomainError",
    "normal_radius_candidates",
    "candidate_minimum",
    "appendix_min_inequality",
    "appendix_integer_inequality",
    "appendix_grid_check",
]
