"""Bundled demo scenes.

The `figure4` demo is a scripted downward fingertip pass: free fall through
empty space, a dwell inside a force wave's range, then a descent into the
overlap between the wave and a linear-ramp spring. It exercises range
entry, superposition, the three-band overlap rendering and the sign grid in
one recording.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DescentScene:
    """Parameters of the wave-into-spring descent: two overlapping
    instances and a hold-descend-hold intent path."""

    rate: float = 1000.0  # Hz
    duration: float = 3.0  # s
    wave_base: float = 12.0  # mm
    wave_size: float = 8.0  # range [12, 20]
    wave_freq: float = 20.0  # Hz; 50 ticks per period at 1 kHz
    wave_amp: float = 0.2  # N
    ramp_base: float = 0.0  # mm
    ramp_size: float = 14.0  # range [0, 14]; overlap band [12, 14]
    ramp_force_base: float = 0.7  # N at z=0, spring pushing up
    ramp_force_range: float = -0.7  # 0 N at the top of the range
    z_start: float = 25.0  # mm, above every range
    z_wave_only: float = 17.0  # dwell inside the wave band only
    z_overlap: float = 13.0  # dwell inside both ranges
    hold_top_until: float = 0.3  # s
    reach_wave_at: float = 0.8
    leave_wave_at: float = 1.8  # 1.0 s dwell = 20 whole wave periods
    reach_overlap_at: float = 2.3
    hold_overlap_until: float = 2.8

    def script_text(self) -> str:
        c = self
        return (
            "# wave-into-spring descent demo\n"
            f"rate {c.rate:g}\n"
            f"duration {c.duration:g}\n"
            "plant kinematic\n"
            f"intent 0:{c.z_start:g} {c.hold_top_until:g}:{c.z_start:g} "
            f"{c.reach_wave_at:g}:{c.z_wave_only:g} "
            f"{c.leave_wave_at:g}:{c.z_wave_only:g} "
            f"{c.reach_overlap_at:g}:{c.z_overlap:g} "
            f"{c.hold_overlap_until:g}:{c.z_overlap:g}\n"
            f"at 0 spawn wave force_wave base={c.wave_base:g} "
            f"size={c.wave_size:g} freq={c.wave_freq:g} amp={c.wave_amp:g}\n"
            f"at 0 spawn spring linear_ramp base={c.ramp_base:g} "
            f"size={c.ramp_size:g} force_base={c.ramp_force_base:g} "
            f"force_range={c.ramp_force_range:g}\n"
        )


DESCENT = DescentScene()

DEMOS = {
    "figure4": DESCENT.script_text,
}
