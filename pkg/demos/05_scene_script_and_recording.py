"""End to end: the bundled descent scene, scripted, run, exported, replotted.

Reproduces the canonical recording: descent through a force wave's range
and on into an overlapping ramp spring, with the per-instance force
attribution the recorder keeps for every tick.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pathlib

from zhaptics import parse, run
from zhaptics.demo import DESCENT
from zhaptics.runtime import export

OUT = "demos/out"
pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)

text = DESCENT.script_text()
print(text)
rec = run(parse(text))
written = export(rec, f"{OUT}/descent", frames=True)
for p in written:
    print("wrote", p)

t = [r.t for r in rec.records]
fig, axes = plt.subplots(3, 1, figsize=(9, 7), sharex=True)

axes[0].plot(t, [r.z for r in rec.records])
for name, zs in (("wave", (DESCENT.wave_base,
                           DESCENT.wave_base + DESCENT.wave_size)),
                 ("spring", (DESCENT.ramp_base,
                             DESCENT.ramp_base + DESCENT.ramp_size))):
    axes[0].axhspan(*zs, alpha=0.15, label=f"{name} range")
axes[0].set_ylabel("z (mm)"), axes[0].legend(fontsize=7)

axes[1].plot(t, [r.v for r in rec.records])
axes[1].set_ylabel("v (mm/s)")

axes[2].plot(t, [r.total_force for r in rec.records], lw=0.5, label="total")
axes[2].plot(t, [r.forces.get(2, 0.0) for r in rec.records], lw=1.0,
             label="spring share")
axes[2].set_xlabel("t (s)"), axes[2].set_ylabel("force (N)")
axes[2].legend(fontsize=7)

fig.tight_layout()
fig.savefig(f"{OUT}/05_descent_recording.png", dpi=120)
print(f"wrote {OUT}/05_descent_recording.png")
print(f"{len(rec.records)} ticks, {len(rec.frames)} frames")
