"""Scene registries: typed force/DOF primitive instances, schemas, lifecycle.

All spatial values are millimeters, forces newtons, damping N/(mm/s),
periods milliseconds. Instances are identified by session-unique, strictly
increasing integer ids (never reused, shared counter across both registries).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .errors import CapacityExceeded, InvalidParam, UnknownId

# Live-instance limit, applied independently to each registry.
MAX_INSTANCES = 160

HAPTIC_KINDS = (
    "monoforce",
    "linear_ramp",
    "dashpot",
    "directional_dashpot",
    "force_wave",
)

DOF_KINDS = (
    "inside",
    "rel_position",
    "avg_rel_position",
    "avg_abs_dev",
    "speed",
    "downward_pass",
    "upward_pass",
)

# kind -> {param name: unit}; `base`/`size` are shared by every haptic kind.
HAPTIC_PARAMS: dict[str, dict[str, str]] = {
    "monoforce": {"force": "N"},
    "linear_ramp": {"force_base": "N", "force_range": "N"},
    "dashpot": {"damping": "N/(mm/s)"},
    "directional_dashpot": {"damping": "N/(mm/s)", "direction": "bit"},
    "force_wave": {"freq": "Hz", "amp": "N"},
}

DOF_PARAMS: dict[str, dict[str, str]] = {
    "inside": {"base": "mm", "size": "mm"},
    "rel_position": {"base": "mm"},
    "avg_rel_position": {"base": "mm", "period": "ms"},
    "avg_abs_dev": {"period": "ms"},
    "speed": {},
    "downward_pass": {"threshold": "mm"},
    "upward_pass": {"threshold": "mm"},
}


def param_value_error(kind: str, key: str, value: float) -> str | None:
    """Range rule for a single parameter value; None when acceptable.

    Shared by registry mutation and script validation so both reject
    identically.
    """
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return f"{key} must be a number"
    if not math.isfinite(value):
        return f"{key} must be finite"
    if key in ("damping", "freq") and value < 0:
        return f"{key} must be >= 0"
    if key == "size" and value < 0:
        return "size must be >= 0"
    if key == "period" and value <= 0:
        return "period must be > 0"
    if key == "direction" and value not in (0, 1):
        return "direction must be 0 or 1"
    return None


def _check_params(kind: str, schema: dict[str, str], params: dict[str, float],
                  partial: bool) -> None:
    for key, value in params.items():
        if key not in schema:
            raise InvalidParam(f"{key!r} is not a parameter of kind {kind!r}")
        msg = param_value_error(kind, key, value)
        if msg:
            raise InvalidParam(msg)
    if not partial:
        missing = set(schema) - set(params)
        if missing:
            raise InvalidParam(
                f"kind {kind!r} missing parameter(s): {', '.join(sorted(missing))}"
            )


@dataclass(frozen=True)
class ZRange:
    """Closed active interval [base, base+size] along the fingertip axis."""

    base: float  # mm
    size: float  # mm, >= 0

    def __post_init__(self):
        if not (math.isfinite(self.base) and math.isfinite(self.size)):
            raise InvalidParam("range must be finite")
        if self.size < 0:
            raise InvalidParam("size must be >= 0")

    @property
    def top(self) -> float:
        return self.base + self.size

    def contains(self, z: float) -> bool:
        return self.base <= z <= self.base + self.size


@dataclass
class HapticPrimitive:
    """One live force-rule instance."""

    id: int
    kind: str
    range: ZRange
    params: dict[str, float]
    created_at: float  # s
    phase: float = 0.0  # rad, force_wave only; kept modulo 2*pi
    hidden: bool = False  # raw-I/O wrapper instances stay out of the visuals


@dataclass
class DofPrimitive:
    """One live control-extraction instance.

    `window` holds (t, z) samples for the averaging kinds; `prev_z` is the
    previous-tick position for the speed and pass kinds (None until the
    first evaluation, so spawning never emits a spurious event).
    """

    id: int
    kind: str
    params: dict[str, float]
    created_at: float
    window: deque = field(default_factory=deque)
    prev_z: float | None = None


class SceneRegistry:
    """Owns every live primitive instance. Single-writer: all mutation happens
    on the runtime tick thread, between ticks."""

    def __init__(self):
        self.haptics: dict[int, HapticPrimitive] = {}
        self.dofs: dict[int, DofPrimitive] = {}
        self.next_id = 1

    def _issue_id(self) -> int:
        issued = self.next_id
        self.next_id += 1
        return issued

    # -- haptic lifecycle ---------------------------------------------------

    def spawn_haptic(self, kind: str, base: float, size: float,
                     params: dict[str, float], *, at: float = 0.0,
                     hidden: bool = False) -> int:
        if kind not in HAPTIC_PARAMS:
            raise InvalidParam(f"unknown haptic kind {kind!r}")
        if len(self.haptics) >= MAX_INSTANCES:
            raise CapacityExceeded(
                f"haptic registry full ({MAX_INSTANCES} live instances)"
            )
        _check_params(kind, HAPTIC_PARAMS[kind], params, partial=False)
        rng = ZRange(base, size)
        inst = HapticPrimitive(
            id=self._issue_id(), kind=kind, range=rng,
            params={k: float(v) for k, v in params.items()},
            created_at=at, hidden=hidden,
        )
        self.haptics[inst.id] = inst
        return inst.id

    def kill_haptic(self, instance_id: int) -> None:
        if instance_id not in self.haptics:
            raise UnknownId(f"no live haptic instance {instance_id}")
        del self.haptics[instance_id]

    # -- DOF lifecycle ------------------------------------------------------

    def spawn_dof(self, kind: str, params: dict[str, float], *,
                  at: float = 0.0) -> int:
        if kind not in DOF_PARAMS:
            raise InvalidParam(f"unknown DOF kind {kind!r}")
        if len(self.dofs) >= MAX_INSTANCES:
            raise CapacityExceeded(
                f"DOF registry full ({MAX_INSTANCES} live instances)"
            )
        _check_params(kind, DOF_PARAMS[kind], params, partial=False)
        inst = DofPrimitive(
            id=self._issue_id(), kind=kind,
            params={k: float(v) for k, v in params.items()},
            created_at=at,
        )
        self.dofs[inst.id] = inst
        return inst.id

    def kill_dof(self, instance_id: int) -> None:
        if instance_id not in self.dofs:
            raise UnknownId(f"no live DOF instance {instance_id}")
        del self.dofs[instance_id]

    # -- shared -------------------------------------------------------------

    def kill(self, instance_id: int) -> None:
        if instance_id in self.haptics:
            del self.haptics[instance_id]
        elif instance_id in self.dofs:
            del self.dofs[instance_id]
        else:
            raise UnknownId(f"no live instance {instance_id}")

    def set_params(self, instance_id: int, fields: dict[str, float]):
        """Update only the named fields of one instance; returns the instance.

        For haptic instances `base`/`size` adjust the active range; a
        force_wave keeps its accumulated phase across edits.
        """
        if instance_id in self.haptics:
            inst = self.haptics[instance_id]
            schema = dict(HAPTIC_PARAMS[inst.kind])
            schema["base"] = "mm"
            schema["size"] = "mm"
            _check_params(inst.kind, schema, fields, partial=True)
            rng = inst.range
            base = fields.get("base", rng.base)
            size = fields.get("size", rng.size)
            if (base, size) != (rng.base, rng.size):
                inst.range = ZRange(float(base), float(size))
            for key, value in fields.items():
                if key not in ("base", "size"):
                    inst.params[key] = float(value)
            return inst
        if instance_id in self.dofs:
            inst = self.dofs[instance_id]
            _check_params(inst.kind, DOF_PARAMS[inst.kind], fields, partial=True)
            for key, value in fields.items():
                inst.params[key] = float(value)
            return inst
        raise UnknownId(f"no live instance {instance_id}")

    def live_haptics(self) -> list[HapticPrimitive]:
        """Live haptic instances in ascending-id order."""
        return list(self.haptics.values())

    def visible_haptics(self) -> list[HapticPrimitive]:
        return [p for p in self.haptics.values() if not p.hidden]
