"""Per-instance force laws and their superposition.

Sign convention: +z is up and away from the surface; positive force rejects
(pushes the finger up), negative force attracts. Velocity is mm/s with
positive meaning upward motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import HapticPrimitive, SceneRegistry
from .errors import DegenerateRange

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FingertipState:
    """Per-tick kinematic truth."""

    z: float  # mm above surface
    v: float  # mm/s, positive = upward
    t: float  # s session time


@dataclass(frozen=True)
class ForceSample:
    """Every live instance's contribution plus their sum.

    `contributions` carries an entry for each live haptic instance, zero
    included, keyed by id in ascending order; `total` is their plain sum in
    that order, so recordings can attribute forces per instance exactly.
    """

    contributions: dict[int, float]  # id -> N
    total: float  # N


def primitive_force(p: HapticPrimitive, s: FingertipState) -> float:
    """Instantaneous force (N) of one instance at the given fingertip state.

    Zero whenever the fingertip is outside the instance's active range.
    Pure: force_wave reads the stored phase, it does not advance it.
    """
    if p.kind == "linear_ramp" and p.range.size == 0.0 \
            and p.params["force_range"] != 0.0:
        raise DegenerateRange(p.id)
    if not p.range.contains(s.z):
        return 0.0
    if p.kind == "monoforce":
        return p.params["force"]
    if p.kind == "linear_ramp":
        if p.range.size == 0.0:
            return p.params["force_base"]
        frac = (s.z - p.range.base) / p.range.size
        return p.params["force_base"] + p.params["force_range"] * frac
    if p.kind == "dashpot":
        return -p.params["damping"] * s.v
    if p.kind == "directional_dashpot":
        damps_up = p.params["direction"] == 1
        if (damps_up and s.v > 0) or (not damps_up and s.v < 0):
            return -p.params["damping"] * s.v
        return 0.0
    if p.kind == "force_wave":
        return p.params["amp"] * math.sin(p.phase)
    raise ValueError(f"unknown haptic kind {p.kind!r}")


def total_force(registry: SceneRegistry, s: FingertipState) -> ForceSample:
    """Superposition over every live instance, summed in ascending-id order."""
    contributions: dict[int, float] = {}
    total = 0.0
    for p in registry.live_haptics():
        f = primitive_force(p, s)
        contributions[p.id] = f
        total += f
    return ForceSample(contributions=contributions, total=total)


def advance_wave_phases(registry: SceneRegistry, dt: float) -> None:
    """Advance every force_wave by 2*pi*freq*dt, in or out of range.

    Called exactly once per tick, after force computation, so a wave
    evaluated a whole number of ticks after spawn has phase
    2*pi*freq*(elapsed ticks)*dt. Phase is kept modulo 2*pi.
    """
    for p in registry.haptics.values():
        if p.kind == "force_wave":
            p.phase = (p.phase + TWO_PI * p.params["freq"] * dt) % TWO_PI
