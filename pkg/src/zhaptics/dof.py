"""Control primitives: continuous value extraction and threshold crossings.

Continuous kinds publish one sample per tick (bit, mm or mm/s per kind);
pass kinds emit discrete events when the fingertip crosses their threshold
in the matching direction. The threshold itself is inclusive on the arrival
side: touching it fires, resting on it does not re-fire.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DofPrimitive
from .forces import FingertipState

CONTINUOUS_KINDS = ("inside", "rel_position", "avg_rel_position",
                    "avg_abs_dev", "speed")
PASS_KINDS = ("downward_pass", "upward_pass")


@dataclass(frozen=True)
class DofSample:
    id: int
    kind: str
    value: float  # bit for inside, mm for positions, mm/s for speed


@dataclass(frozen=True)
class DofEvent:
    id: int
    kind: str  # downward_pass | upward_pass
    t: float  # s
    speed: float  # mm/s, non-negative magnitude at the crossing tick


def window_capacity(period_ms: float, dt: float) -> int:
    """Samples a trailing window of the given duration holds, current tick
    included: one per tick back to `period` ago."""
    return int(math.floor(period_ms / 1000.0 / dt + 1e-9)) + 1


def _push_window(d: DofPrimitive, s: FingertipState, dt: float) -> None:
    d.window.append((s.t, s.z))
    keep = window_capacity(d.params["period"], dt)
    while len(d.window) > keep:
        d.window.popleft()


def sample_continuous(d: DofPrimitive, s: FingertipState,
                      dt: float) -> DofSample:
    """Evaluate a continuous kind against the current state.

    Averaging kinds read the already-updated window; an under-full window
    (right after spawn) averages whatever exists. The speed kind is a raw
    backward difference, reporting 0 on its first tick.
    """
    kind = d.kind
    if kind == "inside":
        base = d.params["base"]
        inside = base <= s.z <= base + d.params["size"]
        value = 1.0 if inside else 0.0
    elif kind == "rel_position":
        value = s.z - d.params["base"]
    elif kind == "avg_rel_position":
        base = d.params["base"]
        value = sum(z - base for _, z in d.window) / len(d.window)
    elif kind == "avg_abs_dev":
        mean = sum(z for _, z in d.window) / len(d.window)
        value = sum(abs(z - mean) for _, z in d.window) / len(d.window)
    elif kind == "speed":
        value = 0.0 if d.prev_z is None else (s.z - d.prev_z) / dt
    else:
        raise ValueError(f"{kind!r} is not a continuous DOF kind")
    return DofSample(id=d.id, kind=kind, value=value)


def detect_crossings(d: DofPrimitive, s: FingertipState) -> list[DofEvent]:
    """Fire a pass event when prev_z was strictly on the departure side and
    the current z has reached the threshold (inclusive)."""
    threshold = d.params["threshold"]
    events: list[DofEvent] = []
    if d.prev_z is not None:
        if d.kind == "downward_pass" and d.prev_z > threshold >= s.z:
            events.append(DofEvent(d.id, d.kind, s.t, abs(s.v)))
        elif d.kind == "upward_pass" and d.prev_z < threshold <= s.z:
            events.append(DofEvent(d.id, d.kind, s.t, abs(s.v)))
    return events


def step(d: DofPrimitive, s: FingertipState,
         dt: float) -> tuple[DofSample | None, list[DofEvent]]:
    """Advance one instance by one tick: push state, sample or detect.

    Returns (sample, events); sample is None for pass kinds.
    """
    if d.kind in ("avg_rel_position", "avg_abs_dev"):
        _push_window(d, s, dt)
        return sample_continuous(d, s, dt), []
    if d.kind == "speed":
        sample = sample_continuous(d, s, dt)
        d.prev_z = s.z
        return sample, []
    if d.kind in PASS_KINDS:
        events = detect_crossings(d, s)
        d.prev_z = s.z
        return None, events
    return sample_continuous(d, s, dt), []
