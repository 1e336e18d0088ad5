"""
Minimal products of focal submanifolds and great spheres.

The product M1 x ... x Mr x N1 x ... x Ns of focal submanifolds (g in
{3, 4, 6}) and great spheres (g = 2) sits minimally in the sphere with
weights lambda_i = sqrt(k_i / S). Two quantities feed the certifier:

- shape_sup_sq: sup of |A|^2 over unit normals, S * max(1, max alpha_i^2 / k_i);
- tan_phi_sq_lb: a lower bound for tan^2 of the normal radius, obtained by
  folding blocks left to right. Each fold keeps the inherited uniform bound
  cos <= 1 - k_min / (2 S~) in a ledger.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

from isoparametric.catalog import FocalDescriptor

from .normal_radius import (
    BlockBound,
    NormalRadiusCandidate,
    candidate_minimum,
    finite_or_text,
    normal_radius_candidates,
)

logger = logging.getLogger(__name__)

FOCAL_COS_BOUND = 0.5  # |cos(2 pi / g)| <= 1/2 for g in {3, 4, 6}
FOCAL_G = (3, 4, 6)
DOMINANCE_TOL = 1e-12


class ProductError(Exception):
    """Raised for malformed product requests."""

    def __init__(self, details: str):
        self.details = details
        super().__init__(details)


class UnsupportedFactorError(ProductError):
    """Raised for factors outside g in {2, 3, 4, 6}."""

    def __init__(self, g: int):
        self.g = g
        super().__init__(f"Unsupported factor with g={g} (expected one of 2, 3, 4, 6)")


@dataclass(frozen=True)
class LedgerEntry:
    """State after one fold: the accumulated block and its inherited cos bound."""

    label: str
    dim: int
    k_min: Optional[int]
    cos_bound: Optional[float]
    closed_form: float
    candidates: Tuple[NormalRadiusCandidate, ...] = ()

    @property
    def candidate_min(self) -> float:
        return candidate_minimum(self.candidates)

    @property
    def dominates(self) -> bool:
        """Candidate minimum is at least the closed form (up to rounding)."""
        if not self.candidates:
            return True
        scale = max(1.0, abs(self.closed_form)) if math.isfinite(self.closed_form) else 1.0
        return self.candidate_min >= self.closed_form - DOMINANCE_TOL * scale

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "dim": self.dim,
            "k_min": self.k_min,
            "cos_bound": self.cos_bound,
            "closed_form": finite_or_text(self.closed_form),
            "candidate_min": finite_or_text(self.candidate_min),
            "candidates": [c.to_dict() for c in self.candidates],
        }


@dataclass(frozen=True)
class NormalRadiusBound:
    """Lower bound on tan^2 of the normal radius with its fold ledger."""

    tan_phi_sq_lb: float
    total_dim: int
    k_min: Optional[int]
    ledger: Tuple[LedgerEntry, ...]
    classified_externally: bool = False

    @property
    def dominance_ok(self) -> bool:
        return all(entry.dominates for entry in self.ledger)

    @property
    def phi_lb(self) -> float:
        """Lower bound on the normal radius phi (radians)."""
        if not math.isfinite(self.tan_phi_sq_lb):
            return math.pi / 2
        return math.atan(math.sqrt(self.tan_phi_sq_lb))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tan_phi_sq_lb": finite_or_text(self.tan_phi_sq_lb),
            "total_dim": self.total_dim,
            "k_min": self.k_min,
            "classified_externally": self.classified_externally,
            "dominance_ok": self.dominance_ok,
            "ledger": [entry.to_dict() for entry in self.ledger],
        }


@dataclass(frozen=True)
class ProductSpec:
    """A minimal product and the quantities the certifier needs."""

    factors: Tuple[FocalDescriptor, ...]
    S: int
    weights: Tuple[float, ...]
    shape_sup_sq: float
    normal_radius: NormalRadiusBound = field(compare=False)

    @property
    def tan_phi_sq_lb(self) -> float:
        return self.normal_radius.tan_phi_sq_lb

    @property
    def cone_dim(self) -> int:
        return self.S + 1

    @property
    def dims(self) -> List[int]:
        return [f.dim for f in self.factors]

    @property
    def focal_dims(self) -> List[int]:
        return sorted(f.dim for f in self.factors if f.g != 2)

    @property
    def sphere_dims(self) -> List[int]:
        return sorted(f.dim for f in self.factors if f.g == 2)

    @property
    def has_g6(self) -> bool:
        return any(f.g == 6 for f in self.factors)

    def label(self) -> str:
        return " x ".join(f.label() if f.g != 2 else f"S^{f.dim}" for f in self.factors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "factors": [f.to_dict() for f in self.factors],
            "S": self.S,
            "cone_dim": self.cone_dim,
            "weights": list(self.weights),
            "shape_sup_sq": self.shape_sup_sq,
            "normal_radius": self.normal_radius.to_dict(),
        }


def _check_factors(factors: Sequence[FocalDescriptor]) -> None:
    if len(factors) < 2:
        raise ProductError(f"A product needs at least 2 factors: got {len(factors)}")
    for factor in factors:
        if factor.g not in (2,) + FOCAL_G:
            raise UnsupportedFactorError(factor.g)


def shape_ratio(factor: FocalDescriptor) -> float:
    """alpha^2 / k of one factor."""
    return factor.alpha_sq / factor.dim


def combine_shape_ratios(left: float, right: float) -> float:
    """Ratio sup |A|^2 / S of a two-block product from the block ratios."""
    return max(1.0, left, right)


def shape_sup_sq(factors: Sequence[FocalDescriptor]) -> float:
    """S * max(1, max alpha_i^2 / k_i), folded pairwise."""
    _check_factors(factors)
    ratio = reduce(combine_shape_ratios, (shape_ratio(f) for f in factors))
    return sum(f.dim for f in factors) * max(1.0, ratio)


def _closed_form(k_min: int, total: int) -> float:
    return (1.0 / (1.0 - k_min / (2.0 * total))) ** 2 - 1.0


def product_normal_radius_lb(factors: Sequence[FocalDescriptor]) -> NormalRadiusBound:
    """
    Lower bound for tan^2 of the normal radius of the minimal product.

    Focal factors are folded in increasing dimension, each entering with
    cos bound 1/2; the accumulated block carries cos <= 1 - k1/(2K).
    A single sphere S^l then gives k_min = min{k1, 2(l+1)} over K + l;
    two or more spheres (block cos = 1 - 2 l1/L) give k_min = min{k1, 4 l1}
    over K + L. Products of spheres alone use tan^2 = 1/cos^2 - 1 with
    cos = 1 - 2 l1/L and are flagged as classified externally.

    Raises:
        ProductError: If fewer than two factors are given
        UnsupportedFactorError: For factors outside g in {2, 3, 4, 6}
    """
    _check_factors(factors)
    focal = sorted((f for f in factors if f.g != 2), key=lambda f: f.dim)
    spheres = sorted(f.dim for f in factors if f.g == 2)
    ledger: List[LedgerEntry] = []

    if not focal:
        total = sum(spheres)
        cos_bound = 1.0 - 2.0 * spheres[0] / total
        lb = math.inf if cos_bound <= 0 else 1.0 / cos_bound**2 - 1.0
        ledger.append(LedgerEntry(f"spheres{tuple(spheres)}", total, None, cos_bound, lb))
        logger.debug(f"All-sphere product {spheres}: tan^2 phi = {lb}")
        return NormalRadiusBound(lb, total, None, tuple(ledger), classified_externally=True)

    k1 = focal[0].dim
    block_dim = k1
    block_cos = FOCAL_COS_BOUND
    ledger.append(LedgerEntry(focal[0].label(), block_dim, k1, block_cos, _closed_form(k1, block_dim)))

    for factor in focal[1:]:
        candidates = normal_radius_candidates(
            BlockBound(block_cos, block_dim), BlockBound(FOCAL_COS_BOUND, factor.dim)
        )
        block_dim += factor.dim
        block_cos = 1.0 - k1 / (2.0 * block_dim)
        ledger.append(
            LedgerEntry(
                f"x {factor.label()}", block_dim, k1, block_cos, _closed_form(k1, block_dim), tuple(candidates)
            )
        )

    k_min = k1
    total = block_dim
    if len(spheres) == 1:
        sphere_dim = spheres[0]
        candidates = normal_radius_candidates(BlockBound(block_cos, block_dim), BlockBound(None, sphere_dim))
        k_min = min(k1, 2 * (sphere_dim + 1))
        total = block_dim + sphere_dim
        ledger.append(
            LedgerEntry(
                f"x S^{sphere_dim}",
                total,
                k_min,
                1.0 - k_min / (2.0 * total),
                _closed_form(k_min, total),
                tuple(candidates),
            )
        )
    elif len(spheres) >= 2:
        sphere_total = sum(spheres)
        sphere_cos = 1.0 - 2.0 * spheres[0] / sphere_total
        candidates = normal_radius_candidates(
            BlockBound(block_cos, block_dim), BlockBound(sphere_cos, sphere_total)
        )
        k_min = min(k1, 4 * spheres[0])
        total = block_dim + sphere_total
        ledger.append(
            LedgerEntry(
                f"x spheres{tuple(spheres)}",
                total,
                k_min,
                1.0 - k_min / (2.0 * total),
                _closed_form(k_min, total),
                tuple(candidates),
            )
        )

    final = ledger[-1]
    lb = final.closed_form
    bound = NormalRadiusBound(lb, total, k_min, tuple(ledger))
    if not bound.dominance_ok:
        worst = min(entry.candidate_min for entry in ledger if entry.candidates)
        logger.warning(f"Candidate minimum {worst!r} below closed form {lb!r}; keeping the smaller value")
        bound = NormalRadiusBound(min(lb, worst), total, k_min, tuple(ledger))
    return bound


def minimal_product(factors: Sequence[FocalDescriptor]) -> ProductSpec:
    """
    Build the minimal product of the given factors.

    Raises:
        ProductError: If fewer than two factors are given
        UnsupportedFactorError: For factors outside g in {2, 3, 4, 6}
    """
    _check_factors(factors)
    factors = tuple(factors)
    total = sum(f.dim for f in factors)
    weights = tuple(math.sqrt(f.dim / total) for f in factors)
    spec = ProductSpec(
        factors=factors,
        S=total,
        weights=weights,
        shape_sup_sq=shape_sup_sq(factors),
        normal_radius=product_normal_radius_lb(factors),
    )
    logger.debug(
        f"Product {spec.label()}: S={total}, sup|A|^2={spec.shape_sup_sq:.6g}, tan^2 phi >= {spec.tan_phi_sq_lb:.6g}"
    )
    return spec


def euler_normal_trace(k1: int, k2: int) -> float:
    """
    Trace of the shape operator along the normal tangent to the product
    circle, diag(-(mu/lambda) I_k1, (lambda/mu) I_k2); vanishes identically.
    """
    total = k1 + k2
    lam, mu = math.sqrt(k1 / total), math.sqrt(k2 / total)
    return k2 * lam / mu - k1 * mu / lam
