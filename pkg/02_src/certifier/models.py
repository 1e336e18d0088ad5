"""
Certificate data models.

A certificate records everything needed to re-derive its verdict: the cone
dimension and alpha^2 fed to the solver, the q-model that produced theta0,
the comparison target and the condition tested against it.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1
SOUNDNESS_MARGIN = 1e-6  # radians; never configurable


class Verdict(str, Enum):
    """Lawlor's criterion is sufficient only: there is no negative verdict."""

    MINIMIZING = "Minimizing"
    INCONCLUSIVE = "Inconclusive"


class Condition(str, Enum):
    THETA_BELOW_THRESHOLD = "theta<threshold"
    DOUBLE_THETA_BELOW_PHI = "2theta<phi"


class SubjectKind(str, Enum):
    FOCAL = "focal"
    UNION = "union"
    PRODUCT = "product"


@dataclass(frozen=True)
class Certificate:
    """
    Outcome of one application of the criterion.

    For products threshold holds the normal-radius lower bound phi_lb and
    tan_phi_sq_lb the bound it was derived from. margin is None when no
    vanishing angle exists.
    """

    kind: SubjectKind
    subject: Dict[str, Any] = field(compare=False)
    cone_dim: int
    alpha_sq_used: float
    q_model_used: str
    theta0_upper: Optional[float]
    threshold: float
    condition: Condition
    verdict: Verdict
    margin: Optional[float]
    spectrum: Optional[List[List[float]]] = None
    tan_phi_sq_lb: Optional[float] = None
    notes: List[str] = field(default_factory=list, compare=False)

    @property
    def is_minimizing(self) -> bool:
        return self.verdict is Verdict.MINIMIZING

    @property
    def theta0_degrees(self) -> Optional[float]:
        return None if self.theta0_upper is None else math.degrees(self.theta0_upper)

    @property
    def threshold_degrees(self) -> float:
        return math.degrees(self.threshold)

    def label(self) -> str:
        return str(self.subject.get("label", self.kind.value))

    def to_dict(self) -> Dict[str, Any]:
        tan_lb = self.tan_phi_sq_lb
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind.value,
            "subject": self.subject,
            "cone_dim": self.cone_dim,
            "alpha_sq_used": self.alpha_sq_used,
            "q_model_used": self.q_model_used,
            "theta0_upper": self.theta0_upper,
            "threshold": self.threshold,
            "condition": self.condition.value,
            "verdict": self.verdict.value,
            "margin": self.margin,
            "spectrum": self.spectrum,
            "tan_phi_sq_lb": tan_lb if tan_lb is None or math.isfinite(tan_lb) else "inf",
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"Unsupported certificate schema_version {version!r} (expected {SCHEMA_VERSION})")
        theta = data.get("theta0_upper")
        margin = data.get("margin")
        tan_lb = data.get("tan_phi_sq_lb")
        return cls(
            kind=SubjectKind(data["kind"]),
            subject=dict(data.get("subject", {})),
            cone_dim=int(data["cone_dim"]),
            alpha_sq_used=float(data["alpha_sq_used"]),
            q_model_used=str(data["q_model_used"]),
            theta0_upper=None if theta is None else float(theta),
            threshold=float(data["threshold"]),
            condition=Condition(data["condition"]),
            verdict=Verdict(data["verdict"]),
            margin=None if margin is None else float(margin),
            spectrum=data.get("spectrum"),
            tan_phi_sq_lb=None if tan_lb is None else float(tan_lb),
            notes=list(data.get("notes", [])),
        )


@dataclass(frozen=True)
class ClosedFormChecks:
    """Closed-form product conditions for given S and smallest focal dimension k1."""

    S: int
    k1: int
    thm3_chain: bool
    thm4_poly: bool
    poly_value: float

    @property
    def implies_minimizing(self) -> bool:
        """Either condition, with the polynomial only where the dimension-12 chain applies (S >= 11)."""
        return self.thm3_chain or (self.thm4_poly and self.S >= 11)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": self.S,
            "k1": self.k1,
            "thm3_chain": self.thm3_chain,
            "thm4_poly": self.thm4_poly,
            "poly_value": self.poly_value,
        }
