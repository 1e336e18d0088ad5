"""
Certified upper bounds on vanishing angles.

theta_upper_bound tries the available strategies in a fixed order and keeps
the smallest successful angle, padded by settings.padding. The chain
strategy transports a dimension-12 exp-bound solve to larger dimensions:

    tan theta_c(ell, alpha_ell) < (k/ell) tan theta_c(k, alpha)
    whenever ell > k and alpha_ell <= (ell/k) alpha.
"""
import logging
import math
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .config import SolverSettings, default_settings
from .models import AngleBound, BoundStrategy, FailureReason, VanishingAngleResult
from .profile_ode import solve_profile
from .qmodel import ExactSpectrum, ExpBound, FBound, Spectrum

logger = logging.getLogger(__name__)

CHAIN_BASE_K = 12
CHAIN_BASE_ALPHA_SQ = 44 / 3
REDUCTION_BASE_ALPHA_SQ = 10.0

DEFAULT_STRATEGIES: Tuple[BoundStrategy, ...] = (
    BoundStrategy.EXACT,
    BoundStrategy.F_BOUND,
    BoundStrategy.EXP_BOUND,
    BoundStrategy.CHAIN,
)


class ScalingHypothesisError(Exception):
    """Raised when the dimension-reduction hypothesis ell > k, alpha_ell <= (ell/k) alpha fails."""

    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Scaling hypothesis fails: {details}")


class NoVanishingError(Exception):
    """Raised when no strategy produces a vanishing angle."""

    def __init__(self, result: VanishingAngleResult, attempts: Optional[List[Dict[str, Any]]] = None):
        self.result = result
        self.attempts = attempts or []
        tried = ", ".join(f"{a['strategy']}: {a['detail']}" for a in self.attempts) or result.describe()
        super().__init__(f"No vanishing angle ({tried})")


def chain_bound(
    ell: int, alpha_ell: float, base_k: int, base_alpha: float, base_tan: float
) -> float:
    """
    Upper bound (k/ell) * base_tan for tan theta_c(ell, alpha_ell).

    Raises:
        ScalingHypothesisError: If ell <= base_k or alpha_ell > (ell/base_k) * base_alpha
    """
    if ell <= base_k:
        raise ScalingHypothesisError(f"ell={ell} must exceed base dimension {base_k}")
    limit = ell / base_k * base_alpha
    if alpha_ell > limit:
        raise ScalingHypothesisError(
            f"alpha={alpha_ell:.10g} exceeds (ell/k)*alpha={limit:.10g} for ell={ell}, k={base_k}"
        )
    return base_k / ell * base_tan


@lru_cache(maxsize=64)
def _exp_solve(k: int, alpha_sq: float, settings: SolverSettings) -> VanishingAngleResult:
    return solve_profile(ExpBound(math.sqrt(alpha_sq)), k, settings)


def base_tangent(
    base_k: int = CHAIN_BASE_K,
    base_alpha_sq: float = CHAIN_BASE_ALPHA_SQ,
    settings: Optional[SolverSettings] = None,
) -> Optional[float]:
    """tan theta_c(base_k, sqrt(base_alpha_sq)) padded upward; None when it does not vanish."""
    settings = settings or default_settings()
    result = _exp_solve(base_k, base_alpha_sq, settings)
    if not result.is_vanishing:
        return None
    return math.tan(result.theta + settings.padding)


def dimension_reduction_bound(
    ell: int,
    alpha_sq: Optional[float] = None,
    base_k: int = CHAIN_BASE_K,
    base_alpha_sq: float = REDUCTION_BASE_ALPHA_SQ,
    settings: Optional[SolverSettings] = None,
) -> float:
    """
    Upper bound for tan theta_c(ell, alpha) from a direct solve at (base_k, base_alpha).

    alpha_sq defaults to ell - 2, the g = 4 focal bound alpha^2 = k - 2.

    Raises:
        ScalingHypothesisError: If the hypothesis of the chain fails
        NoVanishingError: If the base angle does not exist
    """
    settings = settings or default_settings()
    if alpha_sq is None:
        alpha_sq = float(ell - 2)
    base = _exp_solve(base_k, base_alpha_sq, settings)
    if not base.is_vanishing:
        raise NoVanishingError(base)
    base_tan = math.tan(base.theta + settings.padding)
    return chain_bound(ell, math.sqrt(alpha_sq), base_k, math.sqrt(base_alpha_sq), base_tan)


def theta_upper_bound(
    k: int,
    alpha_sq: float,
    spectrum: Optional[Spectrum] = None,
    strategies: Optional[Sequence[BoundStrategy]] = None,
    settings: Optional[SolverSettings] = None,
) -> AngleBound:
    """
    Smallest successful vanishing-angle bound over the strategies, padded.

    Order: exact spectrum (when supplied), F with ell = k-1 (when ell >= 2),
    exp bound, chain from (12, sqrt(44/3)) (when k > 12 and the scaling
    hypothesis holds).

    Raises:
        ValueError: If k < 2, alpha_sq < 0 or the spectrum norm disagrees with alpha_sq
        NoVanishingError: If every strategy fails
    """
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2: got {k}")
    if not alpha_sq >= 0:
        raise ValueError(f"alpha_sq must be >= 0: got {alpha_sq}")
    if spectrum is not None and not math.isclose(spectrum.alpha_sq, alpha_sq, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError(
            f"Spectrum norm {spectrum.alpha_sq!r} does not match alpha_sq={alpha_sq!r}"
        )
    chosen = tuple(strategies) if strategies is not None else DEFAULT_STRATEGIES
    return _theta_upper_bound(int(k), float(alpha_sq), spectrum, chosen, settings or default_settings())


@lru_cache(maxsize=4096)
def _theta_upper_bound(
    k: int,
    alpha_sq: float,
    spectrum: Optional[Spectrum],
    strategies: Tuple[BoundStrategy, ...],
    settings: SolverSettings,
) -> AngleBound:
    attempts: List[Dict[str, Any]] = []
    best: Optional[Tuple[float, BoundStrategy]] = None
    first_failure: Optional[VanishingAngleResult] = None

    if alpha_sq == 0:
        stagnant = VanishingAngleResult.no_vanishing(FailureReason.PROFILE_STAGNANT)
        raise NoVanishingError(stagnant, [{"strategy": "all", "detail": stagnant.describe()}])

    alpha = math.sqrt(alpha_sq)
    for strategy in strategies:
        theta: Optional[float] = None
        if strategy is BoundStrategy.EXACT:
            if spectrum is None:
                continue
            result = solve_profile(ExactSpectrum(spectrum), k, settings)
        elif strategy is BoundStrategy.F_BOUND:
            if k - 1 < 2:
                continue
            result = solve_profile(FBound(alpha, k - 1), k, settings)
        elif strategy is BoundStrategy.EXP_BOUND:
            result = _exp_solve(k, alpha_sq, settings)
        else:
            if k <= CHAIN_BASE_K or alpha > k / CHAIN_BASE_K * math.sqrt(CHAIN_BASE_ALPHA_SQ):
                continue
            base_tan = base_tangent(settings=settings)
            if base_tan is None:
                attempts.append({"strategy": strategy.value, "detail": "base angle does not exist"})
                continue
            tan_bound = chain_bound(k, alpha, CHAIN_BASE_K, math.sqrt(CHAIN_BASE_ALPHA_SQ), base_tan)
            theta = math.atan(tan_bound)
            attempts.append({"strategy": strategy.value, "detail": f"tan < {tan_bound:.10g}", "theta": theta})
            result = None

        if result is not None:
            attempts.append({"strategy": strategy.value, "detail": result.describe(), "theta": result.theta})
            if result.is_vanishing:
                theta = result.theta
            elif first_failure is None:
                first_failure = result

        if theta is not None and (best is None or theta < best[0]):
            best = (theta, strategy)

    if best is None:
        failure = first_failure or VanishingAngleResult.no_vanishing(FailureReason.DOMAIN_END_REACHED)
        raise NoVanishingError(failure, attempts)

    raw_theta, strategy = best
    bound = AngleBound(
        k=k,
        alpha_sq=alpha_sq,
        theta=raw_theta + settings.padding,
        raw_theta=raw_theta,
        strategy=strategy,
        attempts=AngleBound.freeze_attempts(attempts),
    )
    logger.debug(f"theta bound k={k}, alpha^2={alpha_sq:g}: {bound.degrees:.4f} deg via {strategy.value}")
    return bound
