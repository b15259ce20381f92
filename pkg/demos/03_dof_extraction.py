"""Control extraction: continuous values and threshold-pass events.

A bouncing intent trajectory drives every continuous DOF kind plus both
pass detectors; the pass speeds are then mapped to a demo loudness value in
dB, the way a crossing event would drive a sound parameter.
"""

import math
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pathlib

from zhaptics import parse, run

OUT = "demos/out"
pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)

SCRIPT = """\
rate 1000
duration 2
intent 0:22 0.3:22 0.7:4 1.0:18 1.3:6 1.6:16 2:16
at 0 spawn inz inside base=5 size=10
at 0 spawn rel rel_position base=5
at 0 spawn avg avg_rel_position base=5 period=80
at 0 spawn dev avg_abs_dev period=80
at 0 spawn spd speed
at 0 spawn dn downward_pass threshold=10
at 0 spawn up upward_pass threshold=10
"""

rec = run(parse(SCRIPT))
t = [r.t for r in rec.records]
z = [r.z for r in rec.records]

fig, axes = plt.subplots(3, 1, figsize=(9, 7), sharex=True)
axes[0].plot(t, z, label="z")
axes[0].plot(t, [r.samples[3] + 5 for r in rec.records], "--",
             label="avg z (80 ms window)")
axes[0].axhline(10, color="r", lw=0.6, label="pass threshold")
for e in rec.events:
    axes[0].axvline(e.t, color="r" if e.kind == "downward_pass" else "g",
                    lw=0.6, alpha=0.6)
axes[0].legend(fontsize=7), axes[0].set_ylabel("mm")

axes[1].plot(t, [r.samples[5] for r in rec.records], label="speed")
axes[1].set_ylabel("mm/s"), axes[1].legend(fontsize=7)

axes[2].plot(t, [r.samples[1] for r in rec.records], label="inside [5,15]")
axes[2].plot(t, [r.samples[4] for r in rec.records], label="avg abs dev (mm)")
axes[2].set_xlabel("t (s)"), axes[2].legend(fontsize=7)

print(f"{len(rec.events)} pass events:")
for e in rec.events:
    # demo mapping: crossing speed to a loudness level
    loudness_db = 20 * math.log10(max(e.speed, 1.0) / 1000.0)
    print(f"  t={e.t:.3f}s {e.kind:14s} speed={e.speed:7.1f} mm/s "
          f"-> {loudness_db:6.1f} dBFS")

fig.tight_layout()
fig.savefig(f"{OUT}/03_dof_extraction.png", dpi=120)
print(f"wrote {OUT}/03_dof_extraction.png")
