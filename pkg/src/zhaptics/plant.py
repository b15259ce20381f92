"""Fingertip stand-in: intent trajectories and the plant step functions.

Kinematic mode plays the intent trajectory verbatim (engine forces are
ignored); dynamic mode drives a point mass toward the intent target with a
PD controller while engine forces push back, which is what makes spring
equilibria and impact sensations come out of the scene.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParam
from .forces import FingertipState


class Trajectory:
    """Target fingertip height over time, z(t) in mm."""

    def value(self, t: float) -> float:
        raise NotImplementedError

    def velocity(self, t: float, dt: float) -> float:
        return (self.value(t) - self.value(t - dt)) / dt


class Waypoints(Trajectory):
    """Piecewise-linear interpolation through (t, z) waypoints, holding the
    first/last value outside their span."""

    def __init__(self, points: list[tuple[float, float]]):
        if not points:
            raise InvalidParam("trajectory needs at least one waypoint")
        times = [t for t, _ in points]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise InvalidParam("waypoint times must be strictly increasing")
        if any(not math.isfinite(t) or not math.isfinite(z) for t, z in points):
            raise InvalidParam("waypoints must be finite")
        self.points = [(float(t), float(z)) for t, z in points]
        self._t = np.array([t for t, _ in self.points])
        self._z = np.array([z for _, z in self.points])

    def value(self, t: float) -> float:
        return float(np.interp(t, self._t, self._z))


class Constant(Trajectory):
    def __init__(self, z: float):
        self.z = float(z)

    def value(self, t: float) -> float:
        return self.z


class Ramp(Trajectory):
    """Linear move from z0 to z1 over [0, duration], held outside."""

    def __init__(self, z0: float, z1: float, duration: float):
        if duration <= 0:
            raise InvalidParam("ramp duration must be > 0")
        self.z0, self.z1, self.duration = float(z0), float(z1), float(duration)

    def value(self, t: float) -> float:
        frac = min(1.0, max(0.0, t / self.duration))
        return self.z0 + (self.z1 - self.z0) * frac


class Sine(Trajectory):
    def __init__(self, center: float, amplitude: float, freq_hz: float):
        self.center, self.amplitude = float(center), float(amplitude)
        self.freq_hz = float(freq_hz)

    def value(self, t: float) -> float:
        return self.center + self.amplitude * math.sin(2 * math.pi * self.freq_hz * t)


@dataclass(frozen=True)
class PlantConfig:
    mode: str = "kinematic"  # kinematic | dynamic
    mass: float = 0.02  # N/(mm/s^2); critical damping with the gains below
    kp: float = 0.5  # N/mm
    kd: float = 0.2  # N/(mm/s)
    z_min: float = 0.0  # mm travel stops
    z_max: float = 40.0

    def __post_init__(self):
        if self.mode not in ("kinematic", "dynamic"):
            raise InvalidParam(f"unknown plant mode {self.mode!r}")
        if self.mode == "dynamic" and self.mass <= 0:
            raise InvalidParam("mass must be > 0 in dynamic mode")
        if self.z_min >= self.z_max:
            raise InvalidParam("z_min must be < z_max")


DEFAULT_PLANT = PlantConfig()


def _clamp(z: float, cfg: PlantConfig) -> float:
    return min(cfg.z_max, max(cfg.z_min, z))


def step_kinematic(traj: Trajectory, t: float, dt: float,
                   cfg: PlantConfig = DEFAULT_PLANT) -> FingertipState:
    """Play the trajectory directly; velocity is its backward difference.

    Deterministic pure function of (traj, t, dt): engine force never enters.
    """
    z = _clamp(traj.value(t), cfg)
    z_prev = _clamp(traj.value(t - dt), cfg)
    return FingertipState(z=z, v=(z - z_prev) / dt, t=t)


def step_dynamic(state: FingertipState, engine_force: float,
                 traj: Trajectory, t: float, dt: float,
                 cfg: PlantConfig) -> FingertipState:
    """Semi-implicit Euler step of the PD-driven point mass.

    Intent force kp*(z_target - z) + kd*(v_target - v) plus the engine force
    accelerates the mass; travel stops clamp z and zero v.
    """
    z_target = traj.value(t)
    v_target = traj.velocity(t, dt)
    intent = cfg.kp * (z_target - state.z) + cfg.kd * (v_target - state.v)
    accel = (engine_force + intent) / cfg.mass
    v = state.v + accel * dt
    z = state.z + v * dt
    if z <= cfg.z_min:
        z, v = cfg.z_min, 0.0
    elif z >= cfg.z_max:
        z, v = cfg.z_max, 0.0
    return FingertipState(z=z, v=v, t=t)
