"""
Lower-bound models q(t) for inf_nu det(I - t h^nu) used by the profile ODE.

Three variants share one interface:
- ExactSpectrum: the determinant of a single principal-curvature multiset,
  valid when every unit normal carries the same spectrum (focal submanifolds).
- FBound: Lawlor's sharp bound F(alpha, t, ell) from the shape-operator norm.
- ExpBound: the dimension-free limit (1 - alpha t) e^(alpha t).
"""
from __future__ import annotations

import json
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

TRACE_TOL = 1e-9


class QModelKind(str, Enum):
    """Variant tag of a q-model."""

    EXACT = "exact"
    F_BOUND = "F"
    EXP_BOUND = "exp"


class QModelDomainError(Exception):
    """Raised when q(t) is requested outside [0, domain end]."""

    def __init__(self, t: float, domain_end: float):
        self.t = t
        self.domain_end = domain_end
        super().__init__(f"t={t!r} is beyond domain end {domain_end!r}")


@dataclass(frozen=True)
class Spectrum:
    """
    Principal-curvature multiset of a minimal submanifold.

    Entries are (eigenvalue, multiplicity) pairs, merged and sorted by
    decreasing eigenvalue so that equal multisets compare equal.
    """

    entries: Tuple[Tuple[float, int], ...] = ()

    def __post_init__(self):
        merged: Dict[float, int] = {}
        for eigenvalue, multiplicity in self.entries:
            if isinstance(multiplicity, bool) or int(multiplicity) != multiplicity or multiplicity < 1:
                raise ValueError(f"Multiplicity must be a positive integer: got {multiplicity!r}")
            value = float(eigenvalue)
            if not math.isfinite(value):
                raise ValueError(f"Eigenvalue must be finite: got {eigenvalue!r}")
            merged[value] = merged.get(value, 0) + int(multiplicity)

        canonical = tuple(sorted(merged.items(), key=lambda item: -item[0]))
        object.__setattr__(self, "entries", canonical)

        trace = sum(m * lam for lam, m in canonical)
        scale = max(1.0, sum(m * abs(lam) for lam, m in canonical))
        if abs(trace) > TRACE_TOL * scale:
            raise ValueError(f"Spectrum must be trace-free (minimal): trace={trace!r}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Any]]) -> Spectrum:
        """Build from [eigenvalue, multiplicity] pairs (the JSON form)."""
        return cls(tuple((float(lam), int(m)) for lam, m in pairs))

    @classmethod
    def parse(cls, text: str) -> Spectrum:
        """Parse the compact form "1x2,-1x2,0x1"."""
        pairs: List[Tuple[float, int]] = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                value, multiplicity = chunk.lower().split("x")
                pairs.append((float(value), int(multiplicity)))
            except ValueError as e:
                raise ValueError(f"Cannot parse spectrum entry {chunk!r} (expected <eigenvalue>x<multiplicity>)") from e
        return cls(tuple(pairs))

    def to_pairs(self) -> List[List[float]]:
        """JSON form: [[eigenvalue, multiplicity], ...]."""
        return [[lam, m] for lam, m in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.to_pairs())

    @property
    def dimension(self) -> int:
        """Total multiplicity (dimension of the submanifold)."""
        return sum(m for _, m in self.entries)

    @property
    def alpha_sq(self) -> float:
        """Squared norm sum m * lambda^2."""
        return power_sum(self, 2)

    @property
    def is_zero(self) -> bool:
        return all(lam == 0.0 for lam, _ in self.entries)

    def isclose(self, other: Spectrum, tol: float = 1e-12) -> bool:
        """Multiset comparison up to tol on eigenvalues."""
        if len(self.entries) != len(other.entries):
            return False
        return all(
            m1 == m2 and abs(l1 - l2) <= tol
            for (l1, m1), (l2, m2) in zip(self.entries, other.entries)
        )


def power_sum(spectrum: Spectrum, order: int) -> float:
    """sum m * lambda^order over the spectrum."""
    return math.fsum(m * lam**order for lam, m in spectrum.entries)


class QModel(ABC):
    """A lower bound q(t) for inf_nu det(I - t h^nu) with q(0) = 1."""

    kind: QModelKind

    @property
    @abstractmethod
    def alpha(self) -> float:
        """Shape-operator norm the model is built from."""

    @abstractmethod
    def value(self, t: float) -> float:
        """q(t) without domain checking."""

    @abstractmethod
    def domain_end(self) -> float:
        """Right end of the validity range (math.inf when unbounded)."""

    @abstractmethod
    def series(self) -> Tuple[float, float]:
        """(q2, q3) with q(t) = 1 + q2 t^2 + q3 t^3 + O(t^4)."""

    @abstractmethod
    def values(self, ts: np.ndarray) -> np.ndarray:
        """Vectorised q on a grid (no domain checking)."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        ...

    @property
    def is_flat(self) -> bool:
        """True when q is identically 1 (totally geodesic)."""
        return self.alpha == 0.0

    @property
    def q2(self) -> float:
        """Second-order Taylor coefficient (diagnostic)."""
        return self.series()[0]

    def evaluate(self, t: float) -> float:
        """
        q(t) inside the domain.

        Raises:
            QModelDomainError: If t < 0 or t > domain end
        """
        end = self.domain_end()
        if t < 0 or t > end:
            raise QModelDomainError(t, end)
        if t == 0:
            return 1.0
        return self.value(t)


@dataclass(frozen=True)
class ExactSpectrum(QModel):
    """q(t) = prod (1 - lambda_i t)^m_i."""

    spectrum: Spectrum = field(default_factory=Spectrum)
    kind: QModelKind = field(default=QModelKind.EXACT, init=False)

    @property
    def alpha(self) -> float:
        return math.sqrt(self.spectrum.alpha_sq)

    def value(self, t: float) -> float:
        result = 1.0
        for lam, m in self.spectrum.entries:
            result *= (1.0 - lam * t) ** m
        return result

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        result = np.ones_like(ts)
        for lam, m in self.spectrum.entries:
            result = result * (1.0 - lam * ts) ** m
        return result

    def domain_end(self) -> float:
        positive = [lam for lam, _ in self.spectrum.entries if lam > 0]
        if not positive:
            return math.inf
        return 1.0 / max(positive)

    def series(self) -> Tuple[float, float]:
        return -power_sum(self.spectrum, 2) / 2.0, -power_sum(self.spectrum, 3) / 3.0

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "spectrum": self.spectrum.to_pairs()}


@dataclass(frozen=True)
class FBound(QModel):
    """Lawlor's bound F(alpha, t, ell), valid on [0, (1/alpha) sqrt(ell/(ell-1))]."""

    alpha_value: float = 0.0
    ell: int = 2
    kind: QModelKind = field(default=QModelKind.F_BOUND, init=False)

    def __post_init__(self):
        if not self.alpha_value >= 0:
            raise ValueError(f"alpha must be >= 0: got {self.alpha_value}")
        if isinstance(self.ell, bool) or int(self.ell) != self.ell or self.ell < 2:
            raise ValueError(f"ell must be an integer >= 2: got {self.ell}")

    @property
    def alpha(self) -> float:
        return self.alpha_value

    def value(self, t: float) -> float:
        return f_bound_value(self.alpha_value, t, self.ell)

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        a, ell = self.alpha_value, self.ell
        return (1.0 - a * ts * math.sqrt((ell - 1) / ell)) * (
            1.0 + a * ts / math.sqrt(ell * (ell - 1))
        ) ** (ell - 1)

    def domain_end(self) -> float:
        if self.alpha_value == 0:
            return math.inf
        return math.sqrt(self.ell / (self.ell - 1)) / self.alpha_value

    def series(self) -> Tuple[float, float]:
        if self.alpha_value == 0:
            return 0.0, 0.0
        return ExactSpectrum(equality_spectrum(self.alpha_value, self.ell)).series()

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "alpha": self.alpha_value, "ell": self.ell}


@dataclass(frozen=True)
class ExpBound(QModel):
    """q(t) = (1 - alpha t) e^(alpha t), valid on [0, 1/alpha]."""

    alpha_value: float = 0.0
    kind: QModelKind = field(default=QModelKind.EXP_BOUND, init=False)

    def __post_init__(self):
        if not self.alpha_value >= 0:
            raise ValueError(f"alpha must be >= 0: got {self.alpha_value}")

    @property
    def alpha(self) -> float:
        return self.alpha_value

    def value(self, t: float) -> float:
        x = self.alpha_value * t
        return (1.0 - x) * math.exp(x)

    def values(self, ts: np.ndarray) -> np.ndarray:
        x = self.alpha_value * np.asarray(ts, dtype=float)
        return (1.0 - x) * np.exp(x)

    def domain_end(self) -> float:
        if self.alpha_value == 0:
            return math.inf
        return 1.0 / self.alpha_value

    def series(self) -> Tuple[float, float]:
        a = self.alpha_value
        return -(a**2) / 2.0, -(a**3) / 3.0

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "alpha": self.alpha_value}


def f_bound_value(alpha: float, t: float, ell: int) -> float:
    """F(alpha, t, ell) = (1 - a t sqrt((l-1)/l)) (1 + a t / sqrt(l(l-1)))^(l-1)."""
    return (1.0 - alpha * t * math.sqrt((ell - 1) / ell)) * (
        1.0 + alpha * t / math.sqrt(ell * (ell - 1))
    ) ** (ell - 1)


def eval_q(model: QModel, t: float) -> float:
    """q(t) for any model; q(0) = 1 exactly."""
    return model.evaluate(t)


def q_domain_end(model: QModel) -> float:
    """Smallest t > 0 where q vanishes (or the F validity end); math.inf if none."""
    return model.domain_end()


def q_series(model: QModel) -> Tuple[float, float]:
    """(q2, q3) Taylor coefficients of q at t = 0."""
    return model.series()


def equality_spectrum(alpha: float, ell: int) -> Spectrum:
    """
    Spectrum whose determinant equals F(alpha, t, ell) for every t.

    One eigenvalue alpha*sqrt((ell-1)/ell) and ell-1 copies of
    -alpha/sqrt(ell(ell-1)); trace 0, squared norm alpha^2.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0: got {alpha}")
    if int(ell) != ell or ell < 2:
        raise ValueError(f"ell must be an integer >= 2: got {ell}")
    big = alpha * math.sqrt((ell - 1) / ell)
    small = -alpha / math.sqrt(ell * (ell - 1))
    return Spectrum(((big, 1), (small, ell - 1)))


def model_from_dict(data: Dict[str, Any]) -> QModel:
    """Inverse of QModel.to_dict()."""
    kind = QModelKind(data["kind"])
    if kind is QModelKind.EXACT:
        return ExactSpectrum(Spectrum.from_pairs(data["spectrum"]))
    if kind is QModelKind.F_BOUND:
        return FBound(float(data["alpha"]), int(data["ell"]))
    return ExpBound(float(data["alpha"]))
