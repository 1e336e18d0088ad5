"""
Data models for profile integration and angle bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np


class Outcome(str, Enum):
    """Whether the fastest-vanishing profile reaches zero."""

    VANISHES = "vanishes"
    NO_VANISHING = "no_vanishing"


class FailureReason(str, Enum):
    """Why no vanishing angle was produced."""

    DISCRIMINANT_NEGATIVE = "discriminant_negative"  # D < 0 while h > 0
    DOMAIN_END_REACHED = "domain_end_reached"  # q-domain exhausted while h > 0
    PROFILE_STAGNANT = "profile_stagnant"  # alpha = 0, h identically 1
    STEP_COLLAPSE = "step_collapse"  # step size fell below event_tol under error control


class BoundStrategy(str, Enum):
    """How an upper bound on the vanishing angle was obtained."""

    EXACT = "exact"
    F_BOUND = "F"
    EXP_BOUND = "exp"
    CHAIN = "chain"


@dataclass(frozen=True)
class ProfileState:
    """A sampled point (t, h) of the projection profile; t = tan(angle)."""

    t: float
    h: float


@dataclass(frozen=True)
class VanishingAngleResult:
    """
    Outcome of one profile integration.

    For VANISHES, theta (radians) and t_star = tan(theta) are set.
    For NO_VANISHING, reason is set and t_fail carries the failure location
    (t_fail for DISCRIMINANT_NEGATIVE, t_end for DOMAIN_END_REACHED).
    """

    outcome: Outcome
    theta: Optional[float] = None
    t_star: Optional[float] = None
    h_star: Optional[float] = None
    reason: Optional[FailureReason] = None
    t_fail: Optional[float] = None
    steps: int = 0
    max_residual: float = 0.0
    trace: Optional[Tuple[ProfileState, ...]] = field(default=None, compare=False)

    @classmethod
    def vanishes(cls, t_star: float, h_star: float, **kwargs: Any) -> VanishingAngleResult:
        return cls(
            outcome=Outcome.VANISHES,
            theta=math.atan(t_star),
            t_star=t_star,
            h_star=h_star,
            **kwargs,
        )

    @classmethod
    def no_vanishing(
        cls, reason: FailureReason, t_fail: Optional[float] = None, **kwargs: Any
    ) -> VanishingAngleResult:
        return cls(outcome=Outcome.NO_VANISHING, reason=reason, t_fail=t_fail, **kwargs)

    @property
    def is_vanishing(self) -> bool:
        return self.outcome is Outcome.VANISHES

    @property
    def theta_degrees(self) -> Optional[float]:
        return None if self.theta is None else math.degrees(self.theta)

    def trace_array(self) -> np.ndarray:
        """Trace as an (n, 2) array of (t, h) rows; empty when no trace was kept."""
        if not self.trace:
            return np.empty((0, 2))
        return np.array([(s.t, s.h) for s in self.trace], dtype=float)

    def describe(self) -> str:
        if self.is_vanishing:
            return f"vanishes at {self.theta_degrees:.4f} deg (t*={self.t_star:.10g})"
        if self.t_fail is None:
            return f"no vanishing angle ({self.reason.value})"
        return f"no vanishing angle ({self.reason.value} at t={self.t_fail:.6g})"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "outcome": self.outcome.value,
            "theta": self.theta,
            "t_star": self.t_star,
            "h_star": self.h_star,
            "reason": self.reason.value if self.reason else None,
            "t_fail": self.t_fail,
            "steps": self.steps,
            "max_residual": self.max_residual,
        }
        if self.trace is not None:
            data["trace"] = [[s.t, s.h] for s in self.trace]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> VanishingAngleResult:
        trace = data.get("trace")
        return cls(
            outcome=Outcome(data["outcome"]),
            theta=data.get("theta"),
            t_star=data.get("t_star"),
            h_star=data.get("h_star"),
            reason=FailureReason(data["reason"]) if data.get("reason") else None,
            t_fail=data.get("t_fail"),
            steps=int(data.get("steps", 0)),
            max_residual=float(data.get("max_residual", 0.0)),
            trace=tuple(ProfileState(t, h) for t, h in trace) if trace is not None else None,
        )


@dataclass(frozen=True)
class AngleBound:
    """
    Certified upper bound on a vanishing angle.

    theta is the padded bound (radians); raw_theta is the solver value
    before padding; attempts lists every strategy tried with its outcome (read-only
    mappings).
    """

    k: int
    alpha_sq: float
    theta: float
    raw_theta: float
    strategy: BoundStrategy
    attempts: Tuple[Mapping[str, Any], ...] = field(default=(), compare=False)

    @staticmethod
    def freeze_attempts(attempts: Iterable[Mapping[str, Any]]) -> Tuple[Mapping[str, Any], ...]:
        return tuple(MappingProxyType(dict(a)) for a in attempts)

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)

    @property
    def tan(self) -> float:
        return math.tan(self.theta)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "alpha_sq": self.alpha_sq,
            "theta": self.theta,
            "raw_theta": self.raw_theta,
            "degrees": self.degrees,
            "strategy": self.strategy.value,
            "attempts": [dict(a) for a in self.attempts],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> AngleBound:
        return cls(
            k=int(data["k"]),
            alpha_sq=float(data["alpha_sq"]),
            theta=float(data["theta"]),
            raw_theta=float(data["raw_theta"]),
            strategy=BoundStrategy(data["strategy"]),
            attempts=cls.freeze_attempts(data.get("attempts", [])),
        )
