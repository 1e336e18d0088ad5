"""
Table of upper bounds of vanishing angles.

Rows are alpha^2 values, columns are cone dimensions k. Column k = 12 uses
the exp bound only; every other column uses the full strategy list.
"""
import asyncio
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .angle_bounds import NoVanishingError, theta_upper_bound
from .config import SolverSettings, default_settings
from .models import BoundStrategy
from .profile_ode import IntegrationError
from .runner import Task, TaskRunner

logger = logging.getLogger(__name__)

NO_ANGLE = "***"
EXP_ONLY_DIM = 12
DEFAULT_DIMS: List[int] = list(range(3, 13))
DEFAULT_ALPHA_SQS: List[float] = [float(a) for a in range(0, 20)]


@dataclass(frozen=True)
class AngleCell:
    """One table entry; theta (radians) is None when no vanishing angle exists."""

    k: int
    alpha_sq: float
    theta: Optional[float]
    strategy: Optional[str] = None

    @property
    def degrees(self) -> Optional[float]:
        return None if self.theta is None else math.degrees(self.theta)

    @property
    def text(self) -> str:
        return NO_ANGLE if self.degrees is None else f"{self.degrees:.2f}"


@dataclass
class AngleTable:
    """Cells in row-major order (alpha^2 outer, k inner)."""

    dims: List[int]
    alpha_sqs: List[float]
    cells: List[AngleCell] = field(default_factory=list)

    def cell(self, k: int, alpha_sq: float) -> AngleCell:
        for c in self.cells:
            if c.k == k and c.alpha_sq == alpha_sq:
                return c
        raise KeyError(f"No cell for k={k}, alpha^2={alpha_sq}")

    def rows(self) -> List[List[AngleCell]]:
        width = len(self.dims)
        return [self.cells[i : i + width] for i in range(0, len(self.cells), width)]

    def to_csv(self) -> str:
        """alpha^2 rows, dimension columns, degrees with 2 decimals or ***."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["alpha_sq"] + [str(k) for k in self.dims])
        for alpha_sq, row in zip(self.alpha_sqs, self.rows()):
            writer.writerow([f"{alpha_sq:g}"] + [c.text for c in row])
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dims": list(self.dims),
            "alpha_sqs": list(self.alpha_sqs),
            "cells": [
                {"k": c.k, "alpha_sq": c.alpha_sq, "theta": c.theta, "degrees": c.degrees, "strategy": c.strategy}
                for c in self.cells
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AngleTable":
        return cls(
            dims=[int(k) for k in data["dims"]],
            alpha_sqs=[float(a) for a in data["alpha_sqs"]],
            cells=[
                AngleCell(int(c["k"]), float(c["alpha_sq"]), c.get("theta"), c.get("strategy"))
                for c in data["cells"]
            ],
        )


def table_cell(k: int, alpha_sq: float, settings: SolverSettings) -> AngleCell:
    """Compute one cell; failures become the *** marker."""
    strategies = (BoundStrategy.EXP_BOUND,) if k == EXP_ONLY_DIM else None
    try:
        bound = theta_upper_bound(k, alpha_sq, strategies=strategies, settings=settings)
    except NoVanishingError:
        return AngleCell(k, alpha_sq, None)
    except IntegrationError as e:
        logger.warning(f"Cell k={k}, alpha^2={alpha_sq:g} marked {NO_ANGLE}: {e}")
        return AngleCell(k, alpha_sq, None)
    return AngleCell(k, alpha_sq, bound.theta, bound.strategy.value)


async def generate_angle_table_async(
    dims: Sequence[int],
    alpha_sqs: Sequence[float],
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
) -> AngleTable:
    """Async variant of generate_angle_table (cells fanned out via TaskRunner)."""
    if not dims or not alpha_sqs:
        raise ValueError("dims and alpha_sqs must be nonempty")
    settings = settings or default_settings()

    tasks = [
        Task(f"k={k},alpha_sq={a:g}", table_cell, (int(k), float(a), settings))
        for a in alpha_sqs
        for k in dims
    ]
    results = await TaskRunner(jobs=jobs, log_dir=log_dir).run(tasks)

    cells: List[AngleCell] = []
    for result in results:
        if not result.ok:
            raise result.error
        cells.append(result.value)

    table = AngleTable(dims=[int(k) for k in dims], alpha_sqs=[float(a) for a in alpha_sqs], cells=cells)
    logger.info(f"Angle table generated: {len(dims)} dims x {len(alpha_sqs)} alpha^2 values")
    return table


def generate_angle_table(
    dims: Sequence[int] = DEFAULT_DIMS,
    alpha_sqs: Sequence[float] = DEFAULT_ALPHA_SQS,
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
) -> AngleTable:
    """
    Vanishing-angle upper bounds in degrees, or *** where none exists.

    Args:
        dims: Cone dimensions (columns)
        alpha_sqs: Squared shape-operator norms (rows)
        settings: Integrator tolerances
        jobs: Concurrent cells
        log_dir: Directory for runner JSONL logs

    Returns:
        AngleTable in row-major order; identical for every jobs value
    """
    return asyncio.run(generate_angle_table_async(dims, alpha_sqs, settings, jobs, log_dir))
