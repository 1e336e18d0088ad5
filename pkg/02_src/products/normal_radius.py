"""
Normal-radius candidates for a product of two blocks.

A block is (cos_bound, dim): cos_bound is a uniform upper bound on |cos phi|
over great circles through the block's base point, or None when the block
has no such return (a single great sphere). With lambda^2 = k1/S and
mu^2 = k2/S the lower-bound candidates for tan^2 of the normal radius are

    I         (1 / (lambda^2 c_L + mu^2 c_R))^2 - 1
    II-left   (1 / (lambda^2 c_L + mu^2))^2 - 1
    II-right  (1 / (lambda^2 + mu^2 c_R))^2 - 1
    III       4 k1 k2 / (k1 - k2)^2   (infinite when k1 = k2)
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)


class AppendixDomainError(Exception):
    """Raised when the two-block inequality is evaluated at a = b or non-positive arguments."""

    def __init__(self, a: float, b: float):
        self.a = a
        self.b = b
        super().__init__(f"Inequality undefined for a={a!r}, b={b!r} (requires a, b > 0 and a != b)")


class CandidateCase(str, Enum):
    I = "I"
    II_LEFT = "II-left"
    II_RIGHT = "II-right"
    III = "III"


@dataclass(frozen=True)
class BlockBound:
    """One side of a product: optional uniform cos bound and dimension."""

    cos_bound: Optional[float]
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"Block dimension must be >= 1: got {self.dim}")
        if self.cos_bound is not None and not 0.0 <= self.cos_bound < 1.0:
            raise ValueError(f"cos bound must lie in [0, 1): got {self.cos_bound}")


@dataclass(frozen=True)
class NormalRadiusCandidate:
    """A lower-bound candidate for tan^2 of the normal radius."""

    case: CandidateCase
    omega_sq: float

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.omega_sq)

    def to_dict(self) -> Dict[str, Any]:
        return {"case": self.case.value, "omega_sq": finite_or_text(self.omega_sq)}


BlockLike = Union[BlockBound, Tuple[Optional[float], int]]


def _as_block(block: BlockLike) -> BlockBound:
    if isinstance(block, BlockBound):
        return block
    cos_bound, dim = block
    return BlockBound(cos_bound, int(dim))


def _inverse_sq_minus_one(denominator: float) -> float:
    if denominator <= 0:
        return math.inf
    return (1.0 / denominator) ** 2 - 1.0


def normal_radius_candidates(left: BlockLike, right: BlockLike) -> List[NormalRadiusCandidate]:
    """
    Candidates I, II-left, II-right and III for the product of two blocks.

    Cases needing a missing cos bound are omitted. A zero denominator
    yields an infinite candidate.
    """
    left, right = _as_block(left), _as_block(right)
    k1, k2 = left.dim, right.dim
    total = k1 + k2
    lam_sq, mu_sq = k1 / total, k2 / total

    candidates: List[NormalRadiusCandidate] = []
    if left.cos_bound is not None and right.cos_bound is not None:
        candidates.append(
            NormalRadiusCandidate(
                CandidateCase.I,
                _inverse_sq_minus_one(lam_sq * left.cos_bound + mu_sq * right.cos_bound),
            )
        )
    if left.cos_bound is not None:
        candidates.append(
            NormalRadiusCandidate(CandidateCase.II_LEFT, _inverse_sq_minus_one(lam_sq * left.cos_bound + mu_sq))
        )
    if right.cos_bound is not None:
        candidates.append(
            NormalRadiusCandidate(CandidateCase.II_RIGHT, _inverse_sq_minus_one(lam_sq + mu_sq * right.cos_bound))
        )
    omega_iii = math.inf if k1 == k2 else 4.0 * k1 * k2 / (k1 - k2) ** 2
    candidates.append(NormalRadiusCandidate(CandidateCase.III, omega_iii))
    return candidates


def candidate_minimum(candidates: Sequence[NormalRadiusCandidate]) -> float:
    """Smallest finite candidate; math.inf when none is finite."""
    finite = [c.omega_sq for c in candidates if c.is_finite]
    return min(finite) if finite else math.inf


def appendix_min_inequality(a: float, b: float) -> bool:
    """
    4ab/(a-b)^2 > min{((a+b)/b)^2 - 1, ((a+b)/a)^2 - 1} for a, b > 0, a != b.

    Raises:
        AppendixDomainError: If a == b or either argument is not positive
    """
    if not (a > 0 and b > 0) or a == b:
        raise AppendixDomainError(a, b)
    lhs = 4.0 * a * b / (a - b) ** 2
    rhs = min(((a + b) / b) ** 2 - 1.0, ((a + b) / a) ** 2 - 1.0)
    return lhs > rhs


def appendix_integer_inequality(p: int, q: int) -> Tuple[bool, bool]:
    """
    Integer strengthening, in exact rational arithmetic.

    For integers p != q >= 1 with larger value P:
    4pq/(p-q)^2 >= ((p+q)/(P-1))^2 - 1, with equality iff min(p, q) = 1.

    Returns:
        (holds, equality)

    Raises:
        AppendixDomainError: If p == q or either is < 1
    """
    if p < 1 or q < 1 or p == q:
        raise AppendixDomainError(p, q)
    larger = max(p, q)
    lhs = Fraction(4 * p * q, (p - q) ** 2)
    rhs = Fraction(p + q, larger - 1) ** 2 - 1
    return lhs >= rhs, lhs == rhs


def appendix_grid_check(values: Sequence[float]) -> Tuple[int, int]:
    """
    Evaluate the real inequality on all ordered pairs a != b of values.

    Returns:
        (pairs checked, failures)
    """
    grid = np.asarray(values, dtype=float)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    mask = a != b
    a, b = a[mask], b[mask]
    lhs = 4.0 * a * b / (a - b) ** 2
    rhs = np.minimum(((a + b) / b) ** 2 - 1.0, ((a + b) / a) ** 2 - 1.0)
    failures = int(np.count_nonzero(~(lhs > rhs)))
    if failures:
        logger.warning(f"Real inequality fails on {failures} of {a.size} grid pairs")
    return int(a.size), failures


def finite_or_text(value: float) -> Union[float, str]:
    return value if math.isfinite(value) else "inf"
