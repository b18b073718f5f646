"""Irreversible three-state illness-death trajectories.

States: initial (0) -> progressed (1) -> dead (2), with a direct 0 -> 2
transition.  Each transition is governed by its own piecewise-constant
hazard.  The treatment arm uses the base hazards unchanged; the control
arm gets its pre-progression hazards inflated by the reciprocal of the
transition hazard ratio, and -- because every control progressor switches
onto the experimental treatment at progression -- its post-progression
hazard carries a waning-attenuated version of the treatment effect.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .hazards import PiecewiseHazard, sample_event_time

__all__ = [
    "Arm",
    "Cause",
    "Clock",
    "TransitionHazards",
    "WaningRule",
    "PatientPath",
    "arm_hazards",
    "waning_multiplier",
    "simulate_path",
]


class Arm(enum.Enum):
    TREATMENT = "treatment"
    CONTROL = "control"


class Cause(enum.Enum):
    PROGRESSION = "progression"
    DIRECT_DEATH = "direct_death"


class Clock(enum.Enum):
    """Time scale on which the post-progression hazard runs."""

    SINCE_RANDOMIZATION = "since_randomization"
    SINCE_PROGRESSION = "since_progression"


@dataclass(frozen=True)
class TransitionHazards:
    """The three transition hazards of the illness-death model.

    ``h12_clock`` selects whether the progression-to-death hazard is read
    on the randomization clock (left-truncated at the progression time) or
    restarts at progression (semi-Markov).
    """

    h01: PiecewiseHazard
    h02: PiecewiseHazard
    h12: PiecewiseHazard
    h12_clock: Clock = Clock.SINCE_PROGRESSION

    def exit_hazard(self) -> PiecewiseHazard:
        """Total hazard of leaving the initial state: h01 + h02."""
        return self.h01 + self.h02

    def with_h01_scale(self, s: float) -> "TransitionHazards":
        return TransitionHazards(self.h01.scaled(s), self.h02, self.h12, self.h12_clock)


@dataclass(frozen=True)
class WaningRule:
    """Attenuation of the treatment effect after switching.

    Switchers get their post-progression hazard multiplied by
    ``1 / (attenuation * beta)`` when that product stays <= 1, otherwise
    by ``1 / null_cap`` so the multiplier never drops below ~1.
    """

    attenuation: float = 1.34
    null_cap: float = 0.99

    def __post_init__(self) -> None:
        if self.attenuation < 1:
            raise ValueError("attenuation must be >= 1")
        if not 0 < self.null_cap < 1:
            raise ValueError("null_cap must lie in (0, 1)")


def waning_multiplier(beta: float, waning: WaningRule) -> float:
    """Post-progression hazard multiplier for control-arm switchers."""
    if beta <= 0:
        raise ValueError("beta must be > 0")
    prod = waning.attenuation * beta
    if prod <= 1.0:
        return 1.0 / prod
    return 1.0 / waning.null_cap


def arm_hazards(
    base: TransitionHazards, arm: Arm, beta: float, waning: WaningRule
) -> TransitionHazards:
    """Arm-specific transition hazards.

    Treatment arm: the base hazards unchanged.  Control arm: h01 and h02
    multiplied by 1/beta; h12 multiplied by the waning rule (all control
    progressors switch, so the control h12 is the switched h12).
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    if arm is Arm.TREATMENT:
        return base
    inv = 1.0 / beta
    return TransitionHazards(
        h01=base.h01.scaled(inv),
        h02=base.h02.scaled(inv),
        h12=base.h12.scaled(waning_multiplier(beta, waning)),
        h12_clock=base.h12_clock,
    )


@dataclass(frozen=True)
class PatientPath:
    """One subject's multi-state trajectory, before any trial censoring.

    Times are months from randomization.  ``state0_exit`` is ``inf`` when
    both exit hazards are identically zero (no-event path); ``death_time``
    is ``None`` when death never occurs; ``switch_time`` is present exactly
    for control-arm progressors and equals the progression time.
    """

    arm: Arm
    recruit_time: float
    state0_exit: float
    cause: Cause | None
    death_time: float | None
    switch_time: float | None

    def __post_init__(self) -> None:
        if self.state0_exit < 0:
            raise ValueError("state0_exit must be >= 0")
        has_switch = self.switch_time is not None
        expects_switch = self.arm is Arm.CONTROL and self.cause is Cause.PROGRESSION
        if has_switch != expects_switch:
            raise ValueError("switch_time present iff control-arm progressor")
        if has_switch and self.switch_time != self.state0_exit:
            raise ValueError("switch_time must equal the progression time")
        if (
            self.cause is Cause.PROGRESSION
            and self.death_time is not None
            and not self.death_time > self.state0_exit
        ):
            raise ValueError("post-progression death must follow progression")


def simulate_path(
    haz: TransitionHazards,
    arm: Arm,
    recruit_time: float,
    rng: np.random.Generator,
) -> PatientPath:
    """Draw one trajectory through the illness-death model.

    ``haz`` must already be arm-scaled (see :func:`arm_hazards`); ``arm``
    is recorded and decides whether a progression counts as a switch.

    Draw order is fixed for reproducibility: one uniform for the initial
    state exit, one for the cause, and one more for residual survival only
    when the subject progresses.
    """
    if recruit_time < 0:
        raise ValueError("recruit_time must be >= 0")
    exit_haz = haz.exit_hazard()
    u_exit = _positive_uniform(rng)
    t0 = sample_event_time(exit_haz, u_exit)
    u_cause = _positive_uniform(rng)  # consumed even on a no-event path

    if t0 == math.inf:
        return PatientPath(arm, recruit_time, math.inf, None, None, None)

    total = exit_haz.rate_at(t0)
    p_prog = haz.h01.rate_at(t0) / total if total > 0 else 0.0
    if u_cause < p_prog:
        u_resid = _positive_uniform(rng)
        if haz.h12_clock is Clock.SINCE_PROGRESSION:
            death = t0 + sample_event_time(haz.h12, u_resid)
        else:
            death = sample_event_time(haz.h12, u_resid, start=t0)
        death_time = None if death == math.inf else float(death)
        switch = t0 if arm is Arm.CONTROL else None
        return PatientPath(arm, recruit_time, t0, Cause.PROGRESSION, death_time, switch)

    return PatientPath(arm, recruit_time, t0, Cause.DIRECT_DEATH, float(t0), None)


def _positive_uniform(rng: np.random.Generator) -> float:
    # rng.random() covers [0, 1); nudge a literal 0 to the next float up
    u = rng.random()
    return u if u > 0.0 else 2.0**-53
