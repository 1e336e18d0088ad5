"""
Fastest-vanishing projection profile.

Integrates the equality case of Lawlor's inequality

    (h - (t/k) h')^2 + (h'/k)^2 = q(t)^2,   h(0) = 1,

on its minus branch h' = k (t h - sqrt(D)) / (1 + t^2), D = (1 + t^2) q^2 - h^2,
with an embedded Dormand-Prince 5(4) pair. Steps whose stages meet D < 0
are rejected and halved; the first zero of h is refined with brentq.
"""
import csv
import io
import logging
import math
from dataclasses import replace
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .config import SolverSettings
from .models import FailureReason, ProfileState, VanishingAngleResult
from .qmodel import QModel

logger = logging.getLogger(__name__)

MAX_STEPS = 5_000_000
D_CLAMP = 1e-14

# Dormand-Prince 5(4), FSAL
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = _A[6]
_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


class IntegrationError(Exception):
    """Raised when the profile state becomes non-finite or the step budget runs out."""

    def __init__(self, last_t: float, details: str):
        self.last_t = last_t
        self.details = details
        super().__init__(f"Profile integration failed after t={last_t!r}: {details}")


class _NegativeDiscriminant(Exception):
    """Internal: a stage left the real branch."""


class _Profile:
    """Right-hand side of the equality ODE for one (q, k)."""

    def __init__(self, model: QModel, k: int):
        self.model = model
        self.k = k

    def discriminant(self, t: float, h: float) -> float:
        q = self.model.value(t)
        return (1.0 + t * t) * q * q - h * h

    def slope(self, t: float, h: float, clamp: bool = False) -> float:
        d = self.discriminant(t, h)
        if d < 0:
            if d < -D_CLAMP and not clamp:
                raise _NegativeDiscriminant()
            d = 0.0
        return self.k * (t * h - math.sqrt(d)) / (1.0 + t * t)

    def residual(self, t: float, h: float) -> float:
        """|(h - t u)^2 + u^2 - q^2| with u = h'/k from the minus branch."""
        u = self.slope(t, h, clamp=True) / self.k
        q = self.model.value(t)
        return abs((h - t * u) ** 2 + u * u - q * q)

    def step(
        self, t: float, h: float, dt: float, f0: float, clamp: bool = False
    ) -> Tuple[float, float, float]:
        """One Dormand-Prince step: (h_new, error estimate, slope at the new point)."""
        ks: List[float] = [f0]
        for i in range(1, 7):
            y = h + dt * sum(a * kj for a, kj in zip(_A[i], ks))
            ks.append(self.slope(t + _C[i] * dt, y, clamp=clamp))
        h_new = h + dt * sum(b * kj for b, kj in zip(_B, ks))
        err = abs(dt * sum(e * kj for e, kj in zip(_E, ks)))
        return h_new, err, ks[6]


def startup_coefficients(model: QModel, k: int) -> Optional[Tuple[float, float]]:
    """
    (c, d) of the series h = 1 + c t^2 + d t^3 on the fastest-vanishing branch.

    None when (k-2)^2 + 8 q2 < 0: no real solution leaves t = 0.
    """
    q2, q3 = model.series()
    disc = (k - 2) ** 2 + 8.0 * q2
    if disc < 0:
        return None
    r = math.sqrt(disc)
    c = -k * ((k - 2) + r) / 4.0
    d = -2.0 * k * q3 / (k + 3.0 * r)
    return c, d


def solve_profile(
    model: QModel,
    k: int,
    settings: Optional[SolverSettings] = None,
    keep_trace: bool = False,
) -> VanishingAngleResult:
    """
    Integrate the fastest-vanishing profile and report its vanishing angle.

    Args:
        model: Lower-bound model q(t)
        k: Cone dimension (>= 2)
        settings: Integrator tolerances (defaults to SolverSettings())
        keep_trace: Record every accepted (t, h)

    Returns:
        VanishingAngleResult: VANISHES with theta = arctan(t*), or NO_VANISHING
        with DISCRIMINANT_NEGATIVE / DOMAIN_END_REACHED / PROFILE_STAGNANT,
        or STEP_COLLAPSE when error control stalls below event_tol (no claim
        about the profile)

    Raises:
        ValueError: If k < 2
        IntegrationError: If the state becomes non-finite
    """
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2: got {k}")
    k = int(k)
    settings = settings or SolverSettings()

    if model.is_flat:
        trace = (ProfileState(0.0, 1.0),) if keep_trace else None
        return VanishingAngleResult.no_vanishing(FailureReason.PROFILE_STAGNANT, trace=trace)

    coefficients = startup_coefficients(model, k)
    if coefficients is None:
        logger.debug(f"No real start-up branch for {model.to_dict()} at k={k}")
        trace = (ProfileState(0.0, 1.0),) if keep_trace else None
        return VanishingAngleResult.no_vanishing(
            FailureReason.DISCRIMINANT_NEGATIVE, t_fail=0.0, trace=trace
        )

    c, d = coefficients
    t_end = model.domain_end()
    profile = _Profile(model, k)

    t = min(settings.start_t, t_end / 2)
    h = 1.0 + c * t * t + d * t**3
    samples: List[ProfileState] = [ProfileState(0.0, 1.0), ProfileState(t, h)] if keep_trace else []

    def finish(result: VanishingAngleResult) -> VanishingAngleResult:
        if keep_trace:
            result = replace(result, trace=tuple(samples))
        logger.debug(f"solve_profile k={k} {model.to_dict()}: {result.describe()}")
        return result

    try:
        f = profile.slope(t, h)
    except _NegativeDiscriminant:
        return finish(
            VanishingAngleResult.no_vanishing(FailureReason.DISCRIMINANT_NEGATIVE, t_fail=t)
        )

    dt = settings.max_step
    steps = 0
    max_residual = profile.residual(t, h)

    while True:
        if steps >= MAX_STEPS:
            raise IntegrationError(t, f"step budget {MAX_STEPS} exhausted")
        if not (math.isfinite(h) and math.isfinite(f)):
            raise IntegrationError(t, f"non-finite state h={h!r}, h'={f!r}")

        remaining = t_end - t
        if remaining <= 0:
            return finish(
                VanishingAngleResult.no_vanishing(
                    FailureReason.DOMAIN_END_REACHED, t_fail=t_end, steps=steps, max_residual=max_residual
                )
            )
        dt = min(dt, settings.max_step, remaining)

        try:
            h_new, err, f_new = profile.step(t, h, dt, f)
            if h_new > 0 and profile.discriminant(t + dt, h_new) < -D_CLAMP:
                raise _NegativeDiscriminant()
        except _NegativeDiscriminant:
            dt /= 2.0
            if dt < settings.event_tol:
                return finish(
                    VanishingAngleResult.no_vanishing(
                        FailureReason.DISCRIMINANT_NEGATIVE, t_fail=t, steps=steps, max_residual=max_residual
                    )
                )
            continue

        if err > settings.atol:
            dt *= max(0.2, 0.9 * (settings.atol / err) ** 0.2)
            if dt < settings.event_tol:
                return finish(
                    VanishingAngleResult.no_vanishing(
                        FailureReason.STEP_COLLAPSE, t_fail=t, steps=steps, max_residual=max_residual
                    )
                )
            continue

        steps += 1

        if h_new <= settings.zero_tol:
            if h_new >= -settings.zero_tol:
                t_star, h_star = t + dt, h_new
            else:
                t_star, h_star = _refine_zero(profile, t, h, f, dt, settings)
            if keep_trace:
                samples.append(ProfileState(t_star, h_star))
            return finish(
                VanishingAngleResult.vanishes(
                    t_star, h_star, steps=steps, max_residual=max_residual
                )
            )

        t, h, f = t + dt, h_new, f_new
        residual = profile.residual(t, h)
        if residual >= settings.residual_tol:
            raise IntegrationError(t, f"equality residual {residual:.3e} exceeds {settings.residual_tol:g}")
        max_residual = max(max_residual, residual)
        if keep_trace:
            samples.append(ProfileState(t, h))

        growth = 5.0 if err == 0 else min(5.0, 0.9 * (settings.atol / err) ** 0.2)
        dt *= growth


def _refine_zero(
    profile: _Profile, t: float, h: float, f: float, dt: float, settings: SolverSettings
) -> Tuple[float, float]:
    """Locate h = 0 inside an accepted step by brentq on the step length."""

    def h_after(tau: float) -> float:
        if tau == 0:
            return h
        return profile.step(t, h, tau, f, clamp=True)[0]

    tau = brentq(h_after, 0.0, dt, xtol=settings.event_tol, rtol=4 * np.finfo(float).eps)
    return t + tau, h_after(tau)


def convergence_check(
    model: QModel, k: int, settings: Optional[SolverSettings] = None
) -> float:
    """
    |theta(settings) - theta(settings.halved())|.

    0.0 when neither run vanishes; math.inf when exactly one does.
    """
    settings = settings or SolverSettings()
    coarse = solve_profile(model, k, settings)
    fine = solve_profile(model, k, settings.halved())
    if coarse.is_vanishing and fine.is_vanishing:
        return abs(coarse.theta - fine.theta)
    if coarse.is_vanishing or fine.is_vanishing:
        return math.inf
    return 0.0


def trace_to_csv(result: VanishingAngleResult) -> str:
    """Render a kept trace as CSV with header t,h."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "h"])
    for state in result.trace or ():
        writer.writerow([repr(state.t), repr(state.h)])
    return buffer.getvalue()
