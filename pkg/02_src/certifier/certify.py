"""
Lawlor's criterion applied to focal cones, focal unions and minimal products.

Single focal cones and unions compare theta0 against a wedge threshold
(pi/4 for g = 4, pi/6 for g in {3, 6}, pi/8 for the union of both focal
cones). Products compare 2 theta0 against the normal-radius lower bound phi.
A verdict is Minimizing only when the comparison clears SOUNDNESS_MARGIN.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from isoparametric.catalog import FocalDescriptor, InvalidFamilyError, Side, focal_descriptor
from lawlor.angle_bounds import NoVanishingError, theta_upper_bound
from lawlor.config import SolverSettings, default_settings
from lawlor.models import AngleBound, BoundStrategy
from lawlor.profile_ode import IntegrationError
from lawlor.qmodel import Spectrum
from products.minimal_product import ProductSpec, minimal_product, product_normal_radius_lb

from .models import SOUNDNESS_MARGIN, Certificate, ClosedFormChecks, Condition, SubjectKind, Verdict

logger = logging.getLogger(__name__)

FOCAL_THRESHOLDS: Dict[int, float] = {3: math.pi / 6, 4: math.pi / 4, 6: math.pi / 6}
UNION_THRESHOLD = math.pi / 8
PRODUCT_STRATEGIES: Tuple[BoundStrategy, ...] = (
    BoundStrategy.F_BOUND,
    BoundStrategy.EXP_BOUND,
    BoundStrategy.CHAIN,
)
TAN_THETA_12_CONSTANT = Fraction("0.1683")  # stored as printed
RESOLVE_TOL = 1e-9
NO_MODEL = "none"


class RecheckError(Exception):
    """Raised when a stored certificate does not survive re-evaluation."""

    def __init__(self, label: str, details: str):
        self.label = label
        self.details = details
        super().__init__(f"Certificate {label} fails recheck: {details}")


def _angle_bound(
    k: int,
    alpha_sq: float,
    spectrum: Optional[Spectrum],
    strategies: Sequence[BoundStrategy],
    settings: SolverSettings,
    notes: List[str],
) -> Optional[AngleBound]:
    try:
        return theta_upper_bound(k, alpha_sq, spectrum=spectrum, strategies=strategies, settings=settings)
    except NoVanishingError as e:
        notes.append(f"no vanishing angle: {e.result.describe()}")
    except IntegrationError as e:
        notes.append(f"integration failed at t={e.last_t:.6g}: {e.details}")
    return None


def _double_angle_holds(theta: float, tan_phi_sq_lb: float) -> bool:
    double = 2.0 * theta
    if double >= math.pi / 2:
        return False
    return math.tan(double) ** 2 < tan_phi_sq_lb


def _decide(
    condition: Condition,
    theta: Optional[float],
    threshold: float,
    tan_phi_sq_lb: Optional[float] = None,
) -> Tuple[Verdict, Optional[float]]:
    """Verdict and margin from the stored comparison data."""
    if theta is None:
        return Verdict.INCONCLUSIVE, None
    if condition is Condition.THETA_BELOW_THRESHOLD:
        margin = threshold - theta
        holds = margin >= SOUNDNESS_MARGIN
    else:
        margin = threshold - 2.0 * theta
        holds = margin >= SOUNDNESS_MARGIN and tan_phi_sq_lb is not None and _double_angle_holds(theta, tan_phi_sq_lb)
    return (Verdict.MINIMIZING if holds else Verdict.INCONCLUSIVE), margin


def focal_threshold(g: int) -> float:
    """Wedge threshold for a single focal cone."""
    try:
        return FOCAL_THRESHOLDS[g]
    except KeyError:
        raise InvalidFamilyError(g, 0, 0, f"focal certificates cover g in {sorted(FOCAL_THRESHOLDS)}") from None


def certify_descriptor(descriptor: FocalDescriptor, settings: Optional[SolverSettings] = None) -> Certificate:
    """Certificate for the cone over one focal submanifold, exact-spectrum q-model."""
    settings = settings or default_settings()
    threshold = focal_threshold(descriptor.g)
    notes: List[str] = []
    if not descriptor.admissible:
        notes.append("(g, m1, m2) is not a known isoparametric family")

    bound = _angle_bound(
        descriptor.cone_dim, descriptor.alpha_sq, descriptor.spectrum, (BoundStrategy.EXACT,), settings, notes
    )
    theta = bound.theta if bound else None
    verdict, margin = _decide(Condition.THETA_BELOW_THRESHOLD, theta, threshold)
    if bound:
        notes.append(f"theta0 < {bound.degrees:.4f} deg against {math.degrees(threshold):.4f} deg")

    certificate = Certificate(
        kind=SubjectKind.FOCAL,
        subject={"label": descriptor.label(), **descriptor.to_dict()},
        cone_dim=descriptor.cone_dim,
        alpha_sq_used=descriptor.alpha_sq,
        q_model_used=bound.strategy.value if bound else NO_MODEL,
        theta0_upper=theta,
        threshold=threshold,
        condition=Condition.THETA_BELOW_THRESHOLD,
        verdict=verdict,
        margin=margin,
        spectrum=descriptor.spectrum.to_pairs(),
        notes=notes,
    )
    _log_verdict(certificate)
    return certificate


def certify_focal_cone(
    g: int, m1: int, m2: int, side: Side = Side.PLUS, settings: Optional[SolverSettings] = None
) -> Certificate:
    """
    Certify the cone over the focal submanifold M_side of the family (g, m1, m2).

    Raises:
        InvalidFamilyError: For structurally impossible families or g outside {3, 4, 6}
    """
    descriptor = focal_descriptor(g, m1, m2, side)
    return certify_descriptor(descriptor, settings)


def certify_focal_union(
    g: int, m1: int, m2: int, settings: Optional[SolverSettings] = None
) -> Certificate:
    """
    Certify the union of both focal cones of a g = 4 family against pi/8.

    Raises:
        InvalidFamilyError: If g != 4 or the family is structurally impossible
    """
    if g != 4:
        raise InvalidFamilyError(g, m1, m2, "union certificates require g=4")
    settings = settings or default_settings()

    sides = {side: focal_descriptor(g, m1, m2, side) for side in Side}
    notes: List[str] = []
    bounds = {}
    for side, descriptor in sides.items():
        side_notes: List[str] = []
        bounds[side] = _angle_bound(
            descriptor.cone_dim, descriptor.alpha_sq, descriptor.spectrum, (BoundStrategy.EXACT,), settings, side_notes
        )
        notes.extend(f"{side.value}: {note}" for note in side_notes)

    subject = {
        "label": f"g=4({m1},{m2}) union",
        "g": g,
        "m1": m1,
        "m2": m2,
        "plus": sides[Side.PLUS].to_dict(),
        "minus": sides[Side.MINUS].to_dict(),
        "theta_plus": bounds[Side.PLUS].theta if bounds[Side.PLUS] else None,
        "theta_minus": bounds[Side.MINUS].theta if bounds[Side.MINUS] else None,
    }

    if all(bounds.values()):
        worst_side = max(Side, key=lambda s: bounds[s].theta)
        theta: Optional[float] = bounds[worst_side].theta
        strategy = bounds[worst_side].strategy.value
        notes.append(
            f"theta0 = max over sides = {math.degrees(theta):.4f} deg ({worst_side.value}) "
            f"against {math.degrees(UNION_THRESHOLD):.4f} deg"
        )
    else:
        worst_side = next(s for s in Side if bounds[s] is None)
        theta = None
        strategy = NO_MODEL

    descriptor = sides[worst_side]
    verdict, margin = _decide(Condition.THETA_BELOW_THRESHOLD, theta, UNION_THRESHOLD)
    certificate = Certificate(
        kind=SubjectKind.UNION,
        subject=subject,
        cone_dim=descriptor.cone_dim,
        alpha_sq_used=descriptor.alpha_sq,
        q_model_used=strategy,
        theta0_upper=theta,
        threshold=UNION_THRESHOLD,
        condition=Condition.THETA_BELOW_THRESHOLD,
        verdict=verdict,
        margin=margin,
        spectrum=descriptor.spectrum.to_pairs(),
        notes=notes,
    )
    _log_verdict(certificate)
    return certificate


def closed_form_checks(S: int, k1: int) -> ClosedFormChecks:
    """
    Closed-form product conditions, in exact rational arithmetic.

    thm3_chain (k1 >= 4, S >= 8):
        (1/(1 - k1/(2S)))^2 - 1 >= 4(S-1)/(S-2)^2 > 3(S-1)/(S-7/4)^2
    thm4_poly:
        (k1 S - k1^2/4)[(S+1)^2 - (12c)^2]^2 - (S - k1/2)^2 [24(S+1)c]^2 > 0
    with c = 0.1683.

    Raises:
        ValueError: Unless S >= k1 >= 2
    """
    if not (k1 >= 2 and S >= k1):
        raise ValueError(f"closed-form checks need S >= k1 >= 2: got S={S}, k1={k1}")

    thm3_chain = False
    if k1 >= 4 and S >= 8:
        lower = Fraction(2 * S, 2 * S - k1) ** 2 - 1
        chain = Fraction(4 * (S - 1), (S - 2) ** 2)
        double_angle = Fraction(3 * (S - 1)) / Fraction(4 * S - 7, 4) ** 2
        thm3_chain = lower >= chain > double_angle

    c = TAN_THETA_12_CONSTANT
    poly = (k1 * S - Fraction(k1 * k1, 4)) * ((S + 1) ** 2 - (12 * c) ** 2) ** 2 - (
        S - Fraction(k1, 2)
    ) ** 2 * (24 * (S + 1) * c) ** 2
    return ClosedFormChecks(S=S, k1=k1, thm3_chain=thm3_chain, thm4_poly=poly > 0, poly_value=float(poly))


def certify_product(
    factors: Sequence[FocalDescriptor], settings: Optional[SolverSettings] = None
) -> Certificate:
    """
    Certify the cone over the minimal product of the factors via 2 theta0 < phi.

    theta0 comes from theta_upper_bound(S + 1, sup |A|^2) over the F, exp and
    chain strategies; phi from product_normal_radius_lb.

    Raises:
        ProductError: If fewer than two factors are given
        UnsupportedFactorError: For factors outside g in {2, 3, 4, 6}
    """
    settings = settings or default_settings()
    spec = minimal_product(factors)
    return certify_product_spec(spec, settings)


def certify_product_spec(spec: ProductSpec, settings: Optional[SolverSettings] = None) -> Certificate:
    """Certificate for an already assembled ProductSpec."""
    settings = settings or default_settings()
    notes: List[str] = []
    bound = _angle_bound(spec.cone_dim, spec.shape_sup_sq, None, PRODUCT_STRATEGIES, settings, notes)
    theta = bound.theta if bound else None
    radius = spec.normal_radius
    verdict, margin = _decide(Condition.DOUBLE_THETA_BELOW_PHI, theta, radius.phi_lb, radius.tan_phi_sq_lb)

    if bound:
        notes.append(
            f"2 theta0 < {2 * bound.degrees:.4f} deg against phi > {math.degrees(radius.phi_lb):.4f} deg"
        )
    if radius.classified_externally:
        notes.append("products of great spheres alone are classified independently; bound shown for reference")
    if not radius.dominance_ok:
        notes.append("normal-radius candidate fell below the closed form; smaller value kept")

    if spec.focal_dims and radius.k_min is not None:
        checks = closed_form_checks(spec.S, radius.k_min)
        if checks.thm3_chain:
            notes.append("closed form: k1 >= 4 chain holds")
        if checks.thm4_poly and spec.S >= 11:
            notes.append("closed form: dimension-12 polynomial holds")
        if not checks.implies_minimizing:
            notes.append("closed form: numeric only")
        elif verdict is not Verdict.MINIMIZING:
            logger.error(f"Closed form holds for {spec.label()} but numeric certificate is {verdict.value}")
            notes.append("closed form holds but numeric comparison is inconclusive")

    certificate = Certificate(
        kind=SubjectKind.PRODUCT,
        subject={"label": spec.label(), **spec.to_dict()},
        cone_dim=spec.cone_dim,
        alpha_sq_used=spec.shape_sup_sq,
        q_model_used=bound.strategy.value if bound else NO_MODEL,
        theta0_upper=theta,
        threshold=radius.phi_lb,
        condition=Condition.DOUBLE_THETA_BELOW_PHI,
        verdict=verdict,
        margin=margin,
        tan_phi_sq_lb=radius.tan_phi_sq_lb,
        notes=notes,
    )
    _log_verdict(certificate)
    return certificate


def _log_verdict(certificate: Certificate) -> None:
    if certificate.is_minimizing:
        logger.debug(f"{certificate.label()}: Minimizing, margin {certificate.margin:.3e} rad")
    else:
        logger.warning(f"{certificate.label()}: Inconclusive ({'; '.join(certificate.notes) or 'no details'})")


def recheck_certificate(
    certificate: Certificate, resolve: bool = False, settings: Optional[SolverSettings] = None
) -> Verdict:
    """
    Re-derive a certificate's verdict from its own fields.

    With resolve=True, the subject is rebuilt from its stored parameters
    and theta0, alpha^2, the threshold and the normal-radius bound are
    recomputed and compared with the stored values.

    Returns:
        The recomputed verdict (equal to the stored one)

    Raises:
        RecheckError: If the stored verdict or margin disagrees with the recomputation
    """
    label = certificate.label()
    verdict, margin = _decide(
        certificate.condition, certificate.theta0_upper, certificate.threshold, certificate.tan_phi_sq_lb
    )
    if verdict is not certificate.verdict:
        raise RecheckError(label, f"stored verdict {certificate.verdict.value}, recomputed {verdict.value}")
    if (margin is None) != (certificate.margin is None) or (
        margin is not None and not math.isclose(margin, certificate.margin, rel_tol=0.0, abs_tol=1e-12)
    ):
        raise RecheckError(label, f"stored margin {certificate.margin!r}, recomputed {margin!r}")

    if resolve:
        _resolve(certificate, settings or default_settings())
    logger.debug(f"Recheck passed for {label}: {verdict.value}")
    return verdict


def _resolve(certificate: Certificate, settings: SolverSettings) -> None:
    label = certificate.label()
    subject = certificate.subject

    if certificate.kind is SubjectKind.FOCAL:
        descriptor = focal_descriptor(int(subject["g"]), int(subject["m1"]), int(subject["m2"]), Side(subject["side"]))
        expected_threshold = focal_threshold(descriptor.g)
        _expect(label, "cone_dim", certificate.cone_dim, descriptor.cone_dim)
        _expect(label, "alpha_sq_used", certificate.alpha_sq_used, descriptor.alpha_sq)
    elif certificate.kind is SubjectKind.UNION:
        expected_threshold = UNION_THRESHOLD
    else:
        factors = [FocalDescriptor.from_dict(f) for f in subject["factors"]]
        radius = product_normal_radius_lb(factors)
        expected_threshold = radius.phi_lb
        _expect(label, "tan_phi_sq_lb", certificate.tan_phi_sq_lb, radius.tan_phi_sq_lb)
    _expect(label, "threshold", certificate.threshold, expected_threshold)

    if certificate.q_model_used == NO_MODEL:
        return
    spectrum = Spectrum.from_pairs(certificate.spectrum) if certificate.spectrum is not None else None
    strategy = BoundStrategy(certificate.q_model_used)
    try:
        bound = theta_upper_bound(
            certificate.cone_dim,
            certificate.alpha_sq_used,
            spectrum=spectrum if strategy is BoundStrategy.EXACT else None,
            strategies=(strategy,),
            settings=settings,
        )
    except (NoVanishingError, IntegrationError) as e:
        raise RecheckError(label, f"re-solve failed: {e}") from e
    _expect(label, "theta0_upper", certificate.theta0_upper, bound.theta, tol=RESOLVE_TOL)


def _expect(label: str, name: str, stored: Optional[float], recomputed: float, tol: float = 1e-12) -> None:
    if stored is None:
        raise RecheckError(label, f"{name} missing")
    if math.isinf(recomputed) and math.isinf(stored):
        return
    if not math.isclose(stored, recomputed, rel_tol=tol, abs_tol=tol):
        raise RecheckError(label, f"stored {name}={stored!r}, recomputed {recomputed!r}")
