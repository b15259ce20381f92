"""Headless scene description: cursor, blended block segments, sign grid.

Each visible haptic instance renders as a translucent block over its active
range. Block color encodes the kind, opacity encodes the instance's force
"strength" (full transparency always means an instance that can only output
0 N). Where instances overlap, the overlap segment's RGB is the
opacity-weighted mean of the contributors' colors and its opacity is their
maximum, so overlapping fully transparent instances leave a visible one
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import HapticPrimitive, SceneRegistry
from .forces import FingertipState, ForceSample

KIND_SYMBOLS = {
    "monoforce": "—",            # —
    "linear_ramp": "↗",          # ↗
    "dashpot": "⊞",              # ⊞
    "directional_dashpot": "↗⊞",  # ↗⊞
    "force_wave": "✦",           # ✦
}


@dataclass(frozen=True)
class Rgba:
    r: float
    g: float
    b: float
    a: float


@dataclass(frozen=True)
class BlockSegment:
    """Maximal z interval covered by a constant set of instances."""

    z0: float  # mm, z0 < z1
    z1: float
    contributors: tuple[int, ...]  # ascending instance ids, non-empty
    color: Rgba


@dataclass(frozen=True)
class SignEntry:
    id: int
    kind: str
    symbol: str
    lit: bool


@dataclass(frozen=True)
class Frame:
    """Renderable snapshot of one tick."""

    t: float
    cursor_z: float  # mm
    segments: tuple[BlockSegment, ...]
    signs: tuple[SignEntry, ...]
    total_force: float  # N


@dataclass(frozen=True)
class VisualConfig:
    """Type palette and opacity normalization.

    `strength_ref` is the per-kind force at which a block saturates fully
    opaque; `damping_ref_speed` converts a damping coefficient into a
    reference force (damping * speed) for the dashpot kinds.
    """

    palette: dict[str, tuple[float, float, float]] = field(
        default_factory=lambda: {
            "monoforce": (0.6, 0.6, 0.6),
            "linear_ramp": (0.2, 0.8, 0.2),
            "dashpot": (0.2, 0.4, 0.9),
            "directional_dashpot": (0.2, 0.8, 0.9),
            "force_wave": (0.9, 0.2, 0.8),
        }
    )
    strength_ref: dict[str, float] = field(
        default_factory=lambda: {kind: 1.0 for kind in KIND_SYMBOLS}
    )  # N per kind
    damping_ref_speed: float = 100.0  # mm/s


DEFAULT_VISUAL = VisualConfig()


def strength_of(p: HapticPrimitive, config: VisualConfig = DEFAULT_VISUAL) -> float:
    """Peak force magnitude (N) the instance can currently output."""
    if p.kind == "monoforce":
        return abs(p.params["force"])
    if p.kind == "linear_ramp":
        lo = p.params["force_base"]
        hi = p.params["force_base"] + p.params["force_range"]
        return max(abs(lo), abs(hi))
    if p.kind in ("dashpot", "directional_dashpot"):
        return p.params["damping"] * config.damping_ref_speed
    if p.kind == "force_wave":
        return abs(p.params["amp"])
    raise ValueError(f"unknown haptic kind {p.kind!r}")


def opacity_of(p: HapticPrimitive, config: VisualConfig = DEFAULT_VISUAL) -> float:
    """Linear strength-to-alpha map, clamped to [0, 1]; exactly 0 for an
    instance that can only output 0 N."""
    return min(1.0, strength_of(p, config) / config.strength_ref[p.kind])


def blend(entries: Sequence[tuple[tuple[float, float, float], float]]) -> Rgba:
    """Combine overlapping (rgb, alpha) contributions into one tuple.

    RGB is the alpha-weighted mean of the inputs; alpha is the maximum input
    alpha (never additive). With every alpha zero the result is fully
    transparent with the unweighted mean color (never displayed; avoids 0/0).
    """
    if not entries:
        raise ValueError("blend requires at least one contributor")
    alpha_sum = sum(a for _, a in entries)
    alpha_max = max(a for _, a in entries)
    if alpha_sum == 0.0:
        n = len(entries)
        r = sum(c[0] for c, _ in entries) / n
        g = sum(c[1] for c, _ in entries) / n
        b = sum(c[2] for c, _ in entries) / n
        return Rgba(r, g, b, 0.0)
    r = sum(a / alpha_sum * c[0] for c, a in entries)
    g = sum(a / alpha_sum * c[1] for c, a in entries)
    b = sum(a / alpha_sum * c[2] for c, a in entries)
    return Rgba(r, g, b, alpha_max)


def partition_segments(instances: Iterable[HapticPrimitive],
                       config: VisualConfig = DEFAULT_VISUAL,
                       ) -> tuple[BlockSegment, ...]:
    """Split the union of active ranges at every range endpoint.

    Each resulting positive-length interval covered by at least one instance
    becomes one segment colored by blending its covering instances;
    zero-cover gaps produce nothing. Hidden instances are skipped.
    """
    visible = [p for p in instances if not p.hidden]
    if not visible:
        return ()
    bounds = sorted({b for p in visible for b in (p.range.base, p.range.top)})
    segments = []
    for z0, z1 in zip(bounds, bounds[1:]):
        cover = [p for p in visible
                 if p.range.base <= z0 and z1 <= p.range.top]
        if not cover:
            continue
        cover.sort(key=lambda p: p.id)
        color = blend([(config.palette[p.kind], opacity_of(p, config))
                       for p in cover])
        segments.append(BlockSegment(
            z0=z0, z1=z1, contributors=tuple(p.id for p in cover), color=color,
        ))
    return tuple(segments)


def sign_grid(instances: Iterable[HapticPrimitive], z: float,
              ) -> tuple[SignEntry, ...]:
    """One entry per visible instance in ascending-id order, lit while the
    fingertip is inside that instance's active range."""
    entries = [
        SignEntry(id=p.id, kind=p.kind, symbol=KIND_SYMBOLS[p.kind],
                  lit=p.range.contains(z))
        for p in instances if not p.hidden
    ]
    entries.sort(key=lambda e: e.id)
    return tuple(entries)


def make_frame(registry: SceneRegistry, s: FingertipState,
               force: ForceSample,
               config: VisualConfig = DEFAULT_VISUAL) -> Frame:
    """Pure composition of the per-tick scene snapshot."""
    visible = registry.visible_haptics()
    return Frame(
        t=s.t,
        cursor_z=s.z,
        segments=partition_segments(visible, config),
        signs=sign_grid(visible, s.z),
        total_force=force.total,
    )


def _sig9(x: float) -> float:
    return float(format(x, ".9g"))


def frame_to_dict(frame: Frame) -> dict:
    """Wire format for the frame stream (numbers at 9 significant digits)."""
    return {
        "t": _sig9(frame.t),
        "cursor_z": _sig9(frame.cursor_z),
        "total_force": _sig9(frame.total_force),
        "segments": [
            {
                "z0": _sig9(seg.z0),
                "z1": _sig9(seg.z1),
                "color": [_sig9(seg.color.r), _sig9(seg.color.g),
                          _sig9(seg.color.b), _sig9(seg.color.a)],
                "contributors": list(seg.contributors),
            }
            for seg in frame.segments
        ],
        "signs": [
            {"id": e.id, "kind": e.kind, "symbol": e.symbol, "lit": e.lit}
            for e in frame.signs
        ],
    }
