"""
Isoparametric family catalog.

Focal-submanifold dimensions and principal-curvature spectra for g in
{2, 3, 4, 6}, the OT-FKM multiplicity enumeration for g = 4 and Wang's
area-minimizing classification of the isoparametric hypersurfaces.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from lawlor.qmodel import ExactSpectrum, Spectrum

logger = logging.getLogger(__name__)

SUPPORTED_G = (2, 3, 4, 6)
G3_MULTIPLICITIES = (1, 2, 4, 8)
G6_MULTIPLICITIES = (1, 2)
HOMOGENEOUS_EXCEPTIONS: Tuple[Tuple[int, int], ...] = ((2, 2), (4, 5))
WANG_EXCEPTIONS = {(2, 1, 5), (4, 1, 6)}

_DELTA_BASE = (1, 2, 4, 4, 8, 8, 8, 8)


class InvalidFamilyError(Exception):
    """Raised for structurally impossible (g, m1, m2) parameters."""

    def __init__(self, g: int, m1: int, m2: int, details: str):
        self.g = g
        self.m1 = m1
        self.m2 = m2
        self.details = details
        super().__init__(f"Invalid isoparametric family (g={g}, m1={m1}, m2={m2}): {details}")


class Side(str, Enum):
    """Which focal submanifold of the foliation."""

    PLUS = "plus"
    MINUS = "minus"


class Provenance(str, Enum):
    """Origin of a g = 4 multiplicity pair (or the g in {3, 6} families)."""

    OT_FKM = "OT-FKM"
    HOMOGENEOUS_EXCEPTIONAL = "homogeneous-exceptional"
    CLASSICAL = "g<=3-or-6 family"


@dataclass(frozen=True)
class FocalDescriptor:
    """
    Dimensional and spectral data of one focal submanifold.

    admissible is advisory: False when (g, m1, m2) is not a known family.
    """

    g: int
    m1: int
    m2: int
    side: Side
    dim: int
    spectrum: Spectrum
    alpha_sq: float
    admissible: bool = True

    @property
    def cone_dim(self) -> int:
        return self.dim + 1

    @property
    def other_multiplicity(self) -> int:
        """Multiplicity that does not enter alpha^2 (g = 4: the zero block)."""
        return self.m1 if self.side is Side.PLUS else self.m2

    def q_model(self) -> ExactSpectrum:
        return ExactSpectrum(self.spectrum)

    def label(self) -> str:
        return f"g={self.g}({self.m1},{self.m2}){self.side.value}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "m1": self.m1,
            "m2": self.m2,
            "side": self.side.value,
            "dim": self.dim,
            "cone_dim": self.cone_dim,
            "spectrum": self.spectrum.to_pairs(),
            "alpha_sq": self.alpha_sq,
            "admissible": self.admissible,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FocalDescriptor":
        return cls(
            g=int(data["g"]),
            m1=int(data["m1"]),
            m2=int(data["m2"]),
            side=Side(data["side"]),
            dim=int(data["dim"]),
            spectrum=Spectrum.from_pairs(data["spectrum"]),
            alpha_sq=float(data["alpha_sq"]),
            admissible=bool(data.get("admissible", True)),
        )


@dataclass(frozen=True)
class FamilyRecord:
    """A multiplicity pair with its provenance."""

    g: int
    m1: int
    m2: int
    provenance: Provenance

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, "m1": self.m1, "m2": self.m2, "provenance": self.provenance.value}


@dataclass(frozen=True)
class WangClassification:
    """
    Outcome of Wang's criterion for the cone over an isoparametric hypersurface.

    Truthy when the cone is area-minimizing; strictly is set alongside.
    """

    g: int
    m1: int
    m2: int
    n: int
    minimizing: bool
    strictly: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.minimizing

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g": self.g,
            "m1": self.m1,
            "m2": self.m2,
            "n": self.n,
            "minimizing": self.minimizing,
            "strictly": self.strictly,
            "reason": self.reason,
        }


def alpha_sq(spectrum: Spectrum) -> float:
    """sum m * lambda^2 (0 for the empty spectrum)."""
    return math.fsum(m * lam * lam for lam, m in spectrum.entries)


def clifford_delta(m: int) -> int:
    """
    Radon-Hurwitz number delta(m): dimension of irreducible Clifford modules.

    delta(1..8) = 1, 2, 4, 4, 8, 8, 8, 8 and delta(m + 8) = 16 delta(m).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1: got {m}")
    periods, rest = divmod(m - 1, 8)
    return _DELTA_BASE[rest] * 16**periods


def _validate(g: int, m1: int, m2: int) -> None:
    if g == 1:
        raise InvalidFamilyError(g, m1, m2, "g=1 focal sets are points")
    if g not in SUPPORTED_G:
        raise InvalidFamilyError(g, m1, m2, f"g must be one of {SUPPORTED_G}")
    if m1 < 1 or m2 < 1:
        raise InvalidFamilyError(g, m1, m2, "multiplicities must be >= 1")
    if g in (3, 6) and m1 != m2:
        raise InvalidFamilyError(g, m1, m2, "g=3 and g=6 require m1 == m2")


def is_admissible(g: int, m1: int, m2: int) -> bool:
    """Whether (g, m1, m2) is a known isoparametric family."""
    if g == 2:
        return True
    if g == 3:
        return m1 in G3_MULTIPLICITIES
    if g == 6:
        return m1 in G6_MULTIPLICITIES
    pairs = {(r.m1, r.m2) for r in enumerate_g4_families(m1 + m2)}
    return (m1, m2) in pairs or (m2, m1) in pairs


def focal_descriptor(g: int, m1: int, m2: int, side: Side = Side.PLUS) -> FocalDescriptor:
    """
    Describe a focal submanifold of the family (g, m1, m2).

    g = 4, plus: dim m1 + 2 m2, spectrum {+1 x m2, -1 x m2, 0 x m1};
    minus swaps m1 and m2. g = 3: {+-1/sqrt3 x m}. g = 6:
    {+-sqrt3, +-1/sqrt3, 0} x m. g = 2: a great sphere of dimension m1 (plus)
    or m2 (minus).

    Raises:
        InvalidFamilyError: For g not in {2, 3, 4, 6}, m < 1, or m1 != m2 when g in {3, 6}
    """
    side = Side(side)
    _validate(g, m1, m2)

    if g == 4:
        m_curved, m_flat = (m2, m1) if side is Side.PLUS else (m1, m2)
        spectrum = Spectrum(((1.0, m_curved), (-1.0, m_curved), (0.0, m_flat)))
        dim = m_flat + 2 * m_curved
    elif g == 3:
        c = 1 / math.sqrt(3)
        spectrum = Spectrum(((c, m1), (-c, m1)))
        dim = 2 * m1
    elif g == 6:
        a, b = math.sqrt(3), 1 / math.sqrt(3)
        spectrum = Spectrum(((a, m1), (-a, m1), (b, m1), (-b, m1), (0.0, m1)))
        dim = 5 * m1
    else:
        dim = m1 if side is Side.PLUS else m2
        spectrum = Spectrum(((0.0, dim),))

    admissible = is_admissible(g, m1, m2)
    if not admissible:
        logger.warning(f"(g={g}, m1={m1}, m2={m2}) is not a known isoparametric family")

    return FocalDescriptor(
        g=g,
        m1=m1,
        m2=m2,
        side=side,
        dim=dim,
        spectrum=spectrum,
        alpha_sq=alpha_sq(spectrum),
        admissible=admissible,
    )


def enumerate_g4_families(max_sum: int) -> List[FamilyRecord]:
    """
    All g = 4 multiplicity pairs with m1 + m2 <= max_sum.

    OT-FKM pairs (m, l - m - 1) with l = k delta(m), plus the homogeneous
    exceptions (2, 2) and (4, 5); sorted lexicographically.
    """
    if max_sum < 2:
        raise ValueError(f"max_sum must be >= 2: got {max_sum}")

    records: Dict[Tuple[int, int], FamilyRecord] = {}
    for m in range(1, max_sum):
        delta = clifford_delta(m)
        ell = delta
        while ell - 1 <= max_sum:
            other = ell - m - 1
            if other >= 1:
                records.setdefault((m, other), FamilyRecord(4, m, other, Provenance.OT_FKM))
            ell += delta

    for m1, m2 in HOMOGENEOUS_EXCEPTIONS:
        if m1 + m2 <= max_sum:
            records.setdefault((m1, m2), FamilyRecord(4, m1, m2, Provenance.HOMOGENEOUS_EXCEPTIONAL))

    return [records[key] for key in sorted(records)]


def g3_g6_families() -> List[FamilyRecord]:
    """The g = 3 and g = 6 families (3,1), (3,2), (3,4), (3,8), (6,1), (6,2)."""
    families = [FamilyRecord(3, m, m, Provenance.CLASSICAL) for m in G3_MULTIPLICITIES]
    families += [FamilyRecord(6, m, m, Provenance.CLASSICAL) for m in G6_MULTIPLICITIES]
    return families


def ambient_dimension(g: int, m1: int, m2: int) -> int:
    """n with the isoparametric hypersurface in S^(n-1): n = g (m1 + m2) / 2 + 2."""
    total = g * (m1 + m2)
    if total % 2:
        raise InvalidFamilyError(g, m1, m2, "g(m1+m2) must be even")
    return total // 2 + 2


def wang_minimizing(g: int, m1: int, m2: int, n: Optional[int] = None) -> WangClassification:
    """
    Wang's criterion: the cone over a minimal isoparametric hypersurface in
    S^(n-1) is area-minimizing iff n >= 4g and (g, m1, m2) is not (2, 1, 5)
    or (4, 1, 6). Minimizing cones are strictly area-minimizing.

    g = 1 is refused: hyperplanes minimize in every dimension, which the
    n >= 4g condition does not express.

    Raises:
        InvalidFamilyError: For g = 1 or nonpositive multiplicities
    """
    if g == 1:
        raise InvalidFamilyError(g, m1, m2, "criterion is not stated for g=1 (hyperplanes always minimize)")
    if m1 < 1 or m2 < 1:
        raise InvalidFamilyError(g, m1, m2, "multiplicities must be >= 1")
    if n is None:
        n = ambient_dimension(g, m1, m2)

    key = (g, min(m1, m2), max(m1, m2))
    if n < 4 * g:
        return WangClassification(g, m1, m2, n, False, False, f"n={n} < 4g={4 * g}")
    if key in WANG_EXCEPTIONS:
        return WangClassification(g, m1, m2, n, False, False, f"exceptional family {key}")
    return WangClassification(g, m1, m2, n, True, True, f"n={n} >= 4g={4 * g}")


def catalog_dump(max_sum: int = 9) -> Dict[str, Any]:
    """JSON catalog: g = 4 families up to max_sum and the g in {3, 6} list, both sides each."""
    families = enumerate_g4_families(max_sum) + g3_g6_families()
    entries = []
    for record in families:
        entries.append(
            {
                **record.to_dict(),
                "plus": focal_descriptor(record.g, record.m1, record.m2, Side.PLUS).to_dict(),
                "minus": focal_descriptor(record.g, record.m1, record.m2, Side.MINUS).to_dict(),
            }
        )
    logger.info(f"Catalog dump: {len(entries)} families (max_sum={max_sum})")
    return {"max_sum": max_sum, "families": entries}


def great_sphere(dim: int) -> FocalDescriptor:
    """Totally geodesic S^dim, as the plus focal set of the g = 2 family (dim, dim)."""
    return focal_descriptor(2, dim, dim, Side.PLUS)
