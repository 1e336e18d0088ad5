"""
Family and product sweeps.

Each sweep fans certificates out through TaskRunner and pairs every result
with the verdict the closed-form theory predicts for it.
"""
import asyncio
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Sequence

from isoparametric.catalog import (
    FamilyRecord,
    FocalDescriptor,
    Side,
    enumerate_g4_families,
    focal_descriptor,
    g3_g6_families,
    great_sphere,
)
from lawlor.config import SolverSettings, default_settings
from lawlor.runner import Task, TaskRunner
from products.minimal_product import minimal_product

from .certify import certify_focal_cone, certify_product_spec, closed_form_checks
from .models import Certificate, ClosedFormChecks

logger = logging.getLogger(__name__)

DEFAULT_G4_MAX_SUM = 20
DEFAULT_POOL_MAX_SUM = 5
FOCAL_DIM_8 = 8


@dataclass(frozen=True)
class FamilySweepEntry:
    """Both focal-cone certificates of one family."""

    record: FamilyRecord
    plus: Certificate
    minus: Certificate

    @property
    def expected_minimizing(self) -> Optional[bool]:
        """
        True for families expected to certify. g = 4 (1, 1) is expected to
        stay inconclusive; g in {3, 6} with m = 1 carries no prediction.
        """
        if self.record.m1 != 1 or self.record.m2 != 1:
            return True
        return False if self.record.g == 4 else None

    @property
    def consistent(self) -> bool:
        verdicts = (self.plus.is_minimizing, self.minus.is_minimizing)
        expected = self.expected_minimizing
        if expected is None:
            return True
        return all(verdicts) if expected else not any(verdicts)

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.record.to_dict(),
            "expected_minimizing": self.expected_minimizing,
            "consistent": self.consistent,
            "plus": self.plus.to_dict(),
            "minus": self.minus.to_dict(),
        }


@dataclass(frozen=True)
class ProductSweepEntry:
    """One product certificate with its predicted verdict."""

    factors: List[str]
    certificate: Certificate
    expected_minimizing: bool
    closed_form: Optional[ClosedFormChecks] = None

    @property
    def consistent(self) -> bool:
        predicted = self.expected_minimizing or (self.closed_form is not None and self.closed_form.implies_minimizing)
        return self.certificate.is_minimizing or not predicted

    def to_dict(self) -> Dict[str, Any]:
        return {
            "factors": list(self.factors),
            "expected_minimizing": self.expected_minimizing,
            "consistent": self.consistent,
            "closed_form": self.closed_form.to_dict() if self.closed_form else None,
            "certificate": self.certificate.to_dict(),
        }


def _run(tasks: List[Task], jobs: int, log_dir: Optional[str]) -> List[Any]:
    results = asyncio.run(TaskRunner(jobs=jobs, log_dir=log_dir).run(tasks))
    values = []
    for result in results:
        if not result.ok:
            raise result.error
        values.append(result.value)
    return values


def _sweep_families(
    records: Sequence[FamilyRecord], settings: SolverSettings, jobs: int, log_dir: Optional[str]
) -> List[FamilySweepEntry]:
    tasks = [
        Task(f"g={r.g},m1={r.m1},m2={r.m2},{side.value}", certify_focal_cone, (r.g, r.m1, r.m2, side, settings))
        for r in records
        for side in (Side.PLUS, Side.MINUS)
    ]
    certificates = _run(tasks, jobs, log_dir)
    entries = [
        FamilySweepEntry(record, certificates[2 * i], certificates[2 * i + 1]) for i, record in enumerate(records)
    ]
    inconsistent = [e for e in entries if not e.consistent]
    if inconsistent:
        logger.warning(f"Sweep: {len(inconsistent)} families disagree with the expected verdict")
    logger.info(f"Sweep: {len(entries)} families certified")
    return entries


def sweep_g4_families(
    max_sum: int = DEFAULT_G4_MAX_SUM,
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
) -> List[FamilySweepEntry]:
    """Certify both focal cones of every g = 4 family with m1 + m2 <= max_sum."""
    return _sweep_families(enumerate_g4_families(max_sum), settings or default_settings(), jobs, log_dir)


def sweep_g3_g6_families(
    settings: Optional[SolverSettings] = None, jobs: int = 1, log_dir: Optional[str] = None
) -> List[FamilySweepEntry]:
    """Certify both focal cones of the g = 3 and g = 6 families; m = 1 is expected to stay open."""
    return _sweep_families(g3_g6_families(), settings or default_settings(), jobs, log_dir)


def default_product_pool(max_sum: int = DEFAULT_POOL_MAX_SUM) -> List[FocalDescriptor]:
    """Both sides of the small g = 4 families plus one side of each g in {3, 6} family."""
    pool = [focal_descriptor(r.g, r.m1, r.m2, side) for r in enumerate_g4_families(max_sum) for side in Side]
    pool += [focal_descriptor(r.g, r.m1, r.m2, Side.PLUS) for r in g3_g6_families()]
    return pool


def _is_one_one(factor: FocalDescriptor) -> bool:
    return factor.m1 == 1 and factor.m2 == 1


def expected_product_minimizing(factors: Sequence[FocalDescriptor]) -> bool:
    """
    Predicted verdict: focal-only products whose families avoid (1, 1), and
    any product with a focal factor whose cone has dimension at least 10.
    """
    focal = [f for f in factors if f.g != 2]
    if not focal:
        return False
    if len(focal) == len(factors) and not any(_is_one_one(f) for f in focal):
        return True
    return sum(f.dim for f in factors) + 1 >= 10


def _certify_entry(factors: Sequence[FocalDescriptor], settings: SolverSettings) -> ProductSweepEntry:
    spec = minimal_product(factors)
    certificate = certify_product_spec(spec, settings)
    k_min = spec.normal_radius.k_min
    closed = closed_form_checks(spec.S, k_min) if spec.focal_dims and k_min is not None else None
    return ProductSweepEntry(
        factors=[f.label() for f in factors],
        certificate=certificate,
        expected_minimizing=expected_product_minimizing(factors),
        closed_form=closed,
    )


def sweep_products(
    pool: Optional[Sequence[FocalDescriptor]] = None,
    max_factors: int = 2,
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
) -> List[ProductSweepEntry]:
    """
    Certify every product of 2..max_factors factors drawn with repetition from pool.

    Raises:
        ValueError: If max_factors < 2 or the pool is empty
    """
    if max_factors < 2:
        raise ValueError(f"max_factors must be >= 2: got {max_factors}")
    pool = list(pool) if pool is not None else default_product_pool()
    if not pool:
        raise ValueError("product pool is empty")
    settings = settings or default_settings()

    tasks = []
    for size in range(2, max_factors + 1):
        for combo in combinations_with_replacement(range(len(pool)), size):
            factors = tuple(pool[i] for i in combo)
            tasks.append(Task(" x ".join(f.label() for f in factors), _certify_entry, (factors, settings)))
    entries = _run(tasks, jobs, log_dir)
    inconsistent = [e for e in entries if not e.consistent]
    if inconsistent:
        logger.warning(f"Product sweep: {len(inconsistent)} products disagree with the prediction")
    logger.info(f"Product sweep: {len(entries)} products certified")
    return entries


def sphere_partitions(total: int, smallest: int = 1) -> List[List[int]]:
    """Non-decreasing lists of positive integers summing to total."""
    if total == 0:
        return [[]]
    out = []
    for first in range(smallest, total + 1):
        for rest in sphere_partitions(total - first, first):
            out.append([first] + rest)
    return out


def dimension_8_products(max_sum: int = 8) -> List[List[FocalDescriptor]]:
    """
    Products M^k1 x S^l1 x ... x S^ls of dimension 8 with one focal factor,
    4 <= k1 <= 7 and at least one sphere.
    """
    focal = [
        focal_descriptor(r.g, r.m1, r.m2, side)
        for r in enumerate_g4_families(max_sum) + g3_g6_families()
        for side in Side
    ]
    seen = set()
    products = []
    for factor in focal:
        key = (factor.g, factor.m1, factor.m2, factor.dim)
        if not 4 <= factor.dim < FOCAL_DIM_8 or key in seen:
            continue
        seen.add(key)
        for spheres in sphere_partitions(FOCAL_DIM_8 - factor.dim):
            products.append([factor] + [great_sphere(dim) for dim in spheres])
    return products
