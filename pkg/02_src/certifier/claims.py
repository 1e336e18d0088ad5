"""
Claim verification report.

Every quoted numerical bound is re-derived here: vanishing-angle bounds,
focal, union and product certificates, closed-form polynomial and edge
checks, the two-block inequality and the family sweeps. Claims run
concurrently through TaskRunner and the report keeps the canonical order.
"""
import asyncio
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Awaitable, Callable, Dict, List, Optional, Sequence

from isoparametric.catalog import Side, focal_descriptor, great_sphere
from lawlor.angle_bounds import dimension_reduction_bound, theta_upper_bound
from lawlor.config import SolverSettings, default_settings
from lawlor.models import BoundStrategy
from lawlor.runner import Task, TaskRunner
from products.normal_radius import appendix_grid_check, appendix_integer_inequality

from .certify import (
    TAN_THETA_12_CONSTANT,
    UNION_THRESHOLD,
    certify_focal_cone,
    certify_focal_union,
    certify_product,
    closed_form_checks,
)
from .models import SCHEMA_VERSION, SOUNDNESS_MARGIN, Certificate
from .sweeps import dimension_8_products, sweep_g4_families, sweep_products

logger = logging.getLogger(__name__)

# (step name, duration in seconds, details)
ProgressCallback = Callable[[str, float, str], Awaitable[None]]

EXP = (BoundStrategy.EXP_BOUND,)
F_ONLY = (BoundStrategy.F_BOUND,)
POLY_K1 = (2, 3)
POLY_S_RANGE = range(11, 1001)
INTEGER_LIMIT = 200
CHAIN_DIMS = range(13, 41)


@dataclass
class ClaimResult:
    """
    Outcome of one claim.

    margin is the slack in `unit` (radians unless stated); a claim passes
    when the margin clears SOUNDNESS_MARGIN (strict claims) or 0.
    """

    claim_id: str
    description: str
    passed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    margin: Optional[float] = None
    unit: str = "rad"
    details: str = ""
    certificates: List[Certificate] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "description": self.description,
            "passed": self.passed,
            "value": self.value,
            "bound": self.bound,
            "margin": self.margin,
            "unit": self.unit,
            "details": self.details,
            "certificates": [c.to_dict() for c in self.certificates],
        }


@dataclass
class ClaimReport:
    claims: List[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    @property
    def failed(self) -> List[ClaimResult]:
        return [claim for claim in self.claims if not claim.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "total": len(self.claims),
            "failed": [claim.claim_id for claim in self.failed],
            "claims": [claim.to_dict() for claim in self.claims],
        }

    def render_text(self) -> str:
        """Aligned plain-text table, one line per claim."""
        id_width = max((len(c.claim_id) for c in self.claims), default=8)
        lines = []
        for claim in self.claims:
            status = "PASS" if claim.passed else "FAIL"
            margin = "-" if claim.margin is None else f"{claim.margin:.3e} {claim.unit}"
            lines.append(f"{status}  {claim.claim_id:<{id_width}}  {margin:>18}  {claim.description}")
        lines.append(f"{len(self.claims) - len(self.failed)}/{len(self.claims)} claims passed")
        return "\n".join(lines)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    check: Callable[[SolverSettings], ClaimResult]


def _angle_claim(
    claim_id: str,
    description: str,
    theta: Optional[float],
    bound: float,
    strict: bool = True,
    details: str = "",
    certificates: Optional[List[Certificate]] = None,
) -> ClaimResult:
    required = SOUNDNESS_MARGIN if strict else 0.0
    margin = None if theta is None else bound - theta
    return ClaimResult(
        claim_id=claim_id,
        description=description,
        passed=margin is not None and margin >= required,
        value=theta,
        bound=bound,
        margin=margin,
        details=details,
        certificates=certificates or [],
    )


def _solver_claim(
    claim_id: str, description: str, k: int, alpha_sq: float, strategies, bound_degrees: float, strict: bool = True
) -> Claim:
    def check(settings: SolverSettings) -> ClaimResult:
        result = theta_upper_bound(k, alpha_sq, strategies=strategies, settings=settings)
        return _angle_claim(
            claim_id,
            description,
            result.theta,
            math.radians(bound_degrees),
            strict,
            details=f"{result.degrees:.4f} deg via {result.strategy.value}",
        )

    return Claim(claim_id, description, check)


def _focal_claim(claim_id: str, description: str, g: int, m: int, m2: int, side: Side, bound_degrees: float) -> Claim:
    def check(settings: SolverSettings) -> ClaimResult:
        certificate = certify_focal_cone(g, m, m2, side, settings)
        claim = _angle_claim(
            claim_id,
            description,
            certificate.theta0_upper,
            math.radians(bound_degrees),
            details=f"{certificate.verdict.value}; " + "; ".join(certificate.notes),
            certificates=[certificate],
        )
        claim.passed = claim.passed and certificate.is_minimizing
        return claim

    return Claim(claim_id, description, check)


def _tan_constant(settings: SolverSettings) -> ClaimResult:
    result = theta_upper_bound(12, 44 / 3, strategies=EXP, settings=settings)
    bound = float(TAN_THETA_12_CONSTANT)
    margin = math.atan(bound) - result.theta
    return ClaimResult(
        claim_id="tan-exp-12-44/3",
        description="tan theta_c(12, sqrt(44/3)) < 0.1683",
        passed=margin >= SOUNDNESS_MARGIN,
        value=result.tan,
        bound=bound,
        margin=margin,
        details=f"{result.degrees:.4f} deg",
    )


def _exp_12_19(settings: SolverSettings) -> ClaimResult:
    result = theta_upper_bound(12, 19.0, strategies=EXP, settings=settings)
    claim = _angle_claim(
        "exp-12-19",
        "theta_c(12, sqrt 19) exists",
        result.theta,
        math.pi / 2,
        details=f"{result.degrees:.4f} deg",
    )
    # angles grow with alpha
    base = theta_upper_bound(12, 44 / 3, strategies=EXP, settings=settings)
    if base.theta > result.theta:
        claim.passed = False
        claim.details += f"; below theta_c(12, sqrt(44/3)) = {base.degrees:.4f} deg"
    return claim


def _union_4_2_2(settings: SolverSettings) -> ClaimResult:
    certificate = certify_focal_union(4, 2, 2, settings)
    sides = [certificate.subject.get("theta_plus"), certificate.subject.get("theta_minus")]
    claim = _angle_claim(
        "union-4-2-2",
        "g=4 (2,2): both focal cones below pi/8, union minimizing",
        None if None in sides else max(sides),
        UNION_THRESHOLD,
        details=certificate.verdict.value,
        certificates=[certificate],
    )
    claim.passed = claim.passed and certificate.is_minimizing
    return claim


def _g4_sweep(settings: SolverSettings) -> ClaimResult:
    entries = sweep_g4_families(20, settings)
    bad = [f"({e.record.m1},{e.record.m2})" for e in entries if not e.consistent]
    margins = [
        c.margin for e in entries if e.expected_minimizing for c in (e.plus, e.minus) if c.margin is not None
    ]
    return ClaimResult(
        claim_id="sweep-g4-20",
        description="g=4, m1+m2 <= 20: all families certify except (1,1), which stays inconclusive",
        passed=not bad,
        value=float(len(entries)),
        margin=min(margins) if margins else None,
        details=f"inconsistent: {', '.join(bad)}" if bad else f"{len(entries)} families",
    )


def _poly(settings: SolverSettings) -> ClaimResult:
    values = [closed_form_checks(S, k1).poly_value for k1 in POLY_K1 for S in POLY_S_RANGE]
    worst = min(values)
    return ClaimResult(
        claim_id="poly-k1-2-3",
        description="dimension-12 polynomial > 0 for k1 in {2,3}, 11 <= S <= 1000",
        passed=worst > 0,
        value=worst,
        bound=0.0,
        margin=worst,
        unit="1",
        details=f"{len(values)} cases",
    )


def _edge(claim_id: str, S: int, quoted_half_degrees: float, k: int, alpha_sq: float) -> Claim:
    description = f"S={S}: (1/(1-1/{S}))^2 - 1 > tan^2(2 theta_F({k}, sqrt({alpha_sq:g})))"

    def check(settings: SolverSettings) -> ClaimResult:
        lower = (1.0 / (1.0 - 1.0 / S)) ** 2 - 1.0
        computed = theta_upper_bound(k, alpha_sq, strategies=F_ONLY, settings=settings)
        quoted = math.tan(math.radians(2 * quoted_half_degrees)) ** 2
        solved = math.tan(2 * computed.theta) ** 2
        worst = max(quoted, solved)
        return ClaimResult(
            claim_id=claim_id,
            description=description,
            passed=lower > worst,
            value=worst,
            bound=lower,
            margin=lower - worst,
            unit="tan^2",
            details=f"theta_F < {computed.degrees:.4f} deg (quoted {quoted_half_degrees} deg)",
        )

    return Claim(claim_id, description, check)


def _two_block_grid(settings: SolverSettings) -> ClaimResult:
    checked, failures = appendix_grid_check([i / 10 for i in range(1, 101)])
    return ClaimResult(
        claim_id="two-block-grid",
        description="4ab/(a-b)^2 > min{((a+b)/b)^2-1, ((a+b)/a)^2-1} on the 0.1..10 grid",
        passed=failures == 0,
        value=float(failures),
        bound=0.0,
        unit="1",
        details=f"{checked} pairs",
    )


def _two_block_integer(settings: SolverSettings) -> ClaimResult:
    wrong = []
    for p in range(1, INTEGER_LIMIT + 1):
        for q in range(1, INTEGER_LIMIT + 1):
            if p == q:
                continue
            holds, equality = appendix_integer_inequality(p, q)
            if not holds or equality != (min(p, q) == 1):
                wrong.append((p, q))
    return ClaimResult(
        claim_id="two-block-integer",
        description=f"integer form holds for p != q <= {INTEGER_LIMIT}, equality iff min(p,q) = 1",
        passed=not wrong,
        value=float(len(wrong)),
        bound=0.0,
        unit="1",
        details=f"first failures: {wrong[:5]}" if wrong else "",
    )


def _chain(settings: SolverSettings) -> ClaimResult:
    tangents = [dimension_reduction_bound(ell, settings=settings) for ell in CHAIN_DIMS]
    worst = math.atan(max(tangents))
    return _angle_claim(
        "chain-13-40",
        "tan theta_c(l, sqrt(l-2)) < (12/l) tan theta_c(12, sqrt 10) < 1 for 13 <= l <= 40",
        worst,
        math.pi / 4,
        details=f"largest bound {math.degrees(worst):.4f} deg",
    )


def _product_claim(claim_id: str, description: str, factors_fn: Callable[[], list]) -> Claim:
    def check(settings: SolverSettings) -> ClaimResult:
        certificate = certify_product(factors_fn(), settings)
        return ClaimResult(
            claim_id=claim_id,
            description=description,
            passed=certificate.is_minimizing,
            value=None if certificate.theta0_upper is None else 2 * certificate.theta0_upper,
            bound=certificate.threshold,
            margin=certificate.margin,
            details="; ".join(certificate.notes),
            certificates=[certificate],
        )

    return Claim(claim_id, description, check)


def _dimension_8(settings: SolverSettings) -> ClaimResult:
    products = dimension_8_products()
    certificates = [certify_product(factors, settings) for factors in products]
    bad = [c.label() for c in certificates if not c.is_minimizing]
    margins = [c.margin for c in certificates if c.margin is not None]
    return ClaimResult(
        claim_id="sphere-dim-8",
        description="dim(M) = 8 with a focal factor of dim >= 4 and great spheres: all minimizing",
        passed=not bad and bool(certificates),
        value=float(len(certificates)),
        margin=min(margins) if margins else None,
        details=f"not certified: {', '.join(bad)}" if bad else f"{len(certificates)} products",
    )


def _product_sweep(settings: SolverSettings) -> ClaimResult:
    entries = sweep_products(settings=settings)
    bad = [" x ".join(e.factors) for e in entries if not e.consistent]
    margins = [e.certificate.margin for e in entries if e.expected_minimizing and e.certificate.margin is not None]
    return ClaimResult(
        claim_id="sweep-products",
        description="focal pairs: (1,1)-free products and cones of dimension >= 10 certify",
        passed=not bad,
        value=float(len(entries)),
        margin=min(margins) if margins else None,
        details=f"inconsistent: {'; '.join(bad[:5])}" if bad else f"{len(entries)} products",
    )


def _g3_m1():
    return focal_descriptor(3, 1, 1)


CLAIMS: List[Claim] = [
    _solver_claim("exp-12-10", "theta_c(12, sqrt 10) < 9 deg", 12, 10.0, EXP, 9.0),
    _solver_claim("F-9-32/3", "theta_F(9, sqrt(32/3)) < 18 deg", 9, 32 / 3, F_ONLY, 18.0),
    _solver_claim("F-10-12", "theta_F(10, sqrt 12) <= 13.51 deg", 10, 12.0, F_ONLY, 13.51, strict=False),
    _solver_claim("F-11-40/3", "theta_F(11, sqrt(40/3)) <= 11.35 deg", 11, 40 / 3, F_ONLY, 11.35, strict=False),
    Claim("tan-exp-12-44/3", "tan theta_c(12, sqrt(44/3)) < 0.1683", _tan_constant),
]
CLAIMS += [
    _solver_claim(f"F-{k}-{k - 2}", f"theta_F({k}, sqrt {k - 2}) < 45 deg", k, float(k - 2), F_ONLY, 45.0)
    for k in range(7, 12)
]
CLAIMS += [
    _focal_claim("focal-4-1-2-minus", "g=4 (1,2) minus: theta0 < 27 deg, minimizing", 4, 1, 2, Side.MINUS, 27.0),
    _focal_claim("focal-4-1-2-plus", "g=4 (1,2) plus: theta0 < 25 deg, minimizing", 4, 1, 2, Side.PLUS, 25.0),
]
CLAIMS += [
    _focal_claim(f"focal-{g}-{m}", f"g={g} m={m}: theta0 < 30 deg, minimizing", g, m, m, Side.PLUS, 30.0)
    for g, m in ((3, 2), (3, 4), (3, 8), (6, 2))
]
CLAIMS += [
    Claim("union-4-2-2", "g=4 (2,2) union minimizing", _union_4_2_2),
    Claim("sweep-g4-20", "g=4 family sweep", _g4_sweep),
    Claim("poly-k1-2-3", "dimension-12 polynomial", _poly),
    _edge("edge-S9", 9, 13.51, 10, 12.0),
    _edge("edge-S10", 10, 11.35, 11, 40 / 3),
    Claim("two-block-grid", "two-block inequality grid", _two_block_grid),
    Claim("two-block-integer", "two-block integer inequality", _two_block_integer),
    Claim("exp-12-19", "theta_c(12, sqrt 19) exists", _exp_12_19),
    Claim("chain-13-40", "dimension-reduction chain", _chain),
    Claim("sphere-dim-8", "focal factor with great spheres in dimension 8", _dimension_8),
    _product_claim(
        "product-g3-g3",
        "g=3 m=2 x g=3 m=2 (S=8) minimizing",
        lambda: [focal_descriptor(3, 2, 2), focal_descriptor(3, 2, 2)],
    ),
    _product_claim(
        "product-three-factor",
        "g=3 m=1 x g=3 m=2 x g=4 (1,2) minus (S=10) minimizing",
        lambda: [_g3_m1(), focal_descriptor(3, 2, 2), focal_descriptor(4, 1, 2, Side.MINUS)],
    ),
    _product_claim(
        "product-g3-sphere",
        "g=3 m=2 x S^4 (dim 8, k1 = 4) minimizing",
        lambda: [focal_descriptor(3, 2, 2), great_sphere(4)],
    ),
    Claim("sweep-products", "focal pair sweep", _product_sweep),
]

CLAIM_IDS = [claim.claim_id for claim in CLAIMS]


def _run_claim(claim: Claim, settings: SolverSettings) -> ClaimResult:
    result = claim.check(settings)
    if not result.description:
        result.description = claim.description
    return result


async def verify_paper_claims_async(
    settings: Optional[SolverSettings] = None,
    only: Optional[Sequence[str]] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
    progress_callback: Optional[ProgressCallback] = None,
) -> ClaimReport:
    """
    Run the claims (all, or the ids in `only`) and assemble the report.

    Failures, including exceptions raised by a check, become failed entries.

    Raises:
        ValueError: For unknown claim ids in `only`
    """
    settings = settings or default_settings()
    selected = CLAIMS
    if only:
        unknown = sorted(set(only) - set(CLAIM_IDS))
        if unknown:
            raise ValueError(f"Unknown claim ids: {', '.join(unknown)}")
        selected = [claim for claim in CLAIMS if claim.claim_id in set(only)]

    start = time.time()
    tasks = [Task(claim.claim_id, _run_claim, (claim, settings)) for claim in selected]
    results = await TaskRunner(jobs=jobs, log_dir=log_dir).run(tasks)

    claims: List[ClaimResult] = []
    for claim, result in zip(selected, results):
        if result.ok:
            outcome = result.value
        else:
            logger.error(f"Claim {claim.claim_id} raised: {result.error}")
            outcome = ClaimResult(claim.claim_id, claim.description, False, details=f"error: {result.error}")
        claims.append(outcome)
        if progress_callback:
            status = "pass" if outcome.passed else "FAIL"
            await progress_callback(claim.claim_id, result.latency_ms / 1000, status)

    report = ClaimReport(claims)
    logger.info(
        f"Verified {len(claims)} claims in {time.time() - start:.2f}s: "
        f"{len(claims) - len(report.failed)} passed, {len(report.failed)} failed"
    )
    return report


def verify_paper_claims(
    settings: Optional[SolverSettings] = None,
    only: Optional[Sequence[str]] = None,
    jobs: int = 1,
    log_dir: Optional[str] = None,
    progress_callback: Optional[ProgressCallback] = None,
) -> ClaimReport:
    """Blocking wrapper around verify_paper_claims_async."""
    return asyncio.run(verify_paper_claims_async(settings, only, jobs, log_dir, progress_callback))
