"""Raw transducer-level I/O: build your own primitive from (z, v) in, force out.

A per-tick subscriber reads the fingertip state and writes next tick's
force. Echoing -c*v reproduces a dashpot one tick late; anything else --
here a snap-through toggle -- needs no new primitive kind at all.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pathlib

from zhaptics import Session, parse, run

OUT = "demos/out"
pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)

HEADER = "rate 1000\nduration 0.6\nintent 0:30 0.05:30 0.25:5 0.45:25 0.6:25\n"

native = run(parse(HEADER + "at 0 spawn d dashpot base=0 size=40 damping=0.002\n"))

session = Session(parse(HEADER))
session.open_raw_channel(callback=lambda z, v, t: -0.002 * v)
emulated = session.run()

worst = max(abs(e.total_force - n.total_force)
            for e, n in zip(emulated.records[1:], native.records))
print(f"dashpot emulation vs native, shifted one tick: max |df| = {worst:.2e} N")

# something no built-in kind provides: a snap-through latch that pushes
# down until the finger passes 12 mm, then flips to pushing up
def latch(z, v, t):
    return -0.15 if z > 12.0 else 0.25

session2 = Session(parse(HEADER))
session2.open_raw_channel(callback=latch)
snapped = session2.run()

t = [r.t for r in native.records]
fig, axes = plt.subplots(2, 1, figsize=(9, 5), sharex=True)
axes[0].plot(t, [r.total_force for r in native.records], label="native dashpot")
axes[0].plot(t, [r.total_force for r in emulated.records], "--",
             label="raw-channel echo of -c*v")
axes[0].set_ylabel("force (N)"), axes[0].legend(fontsize=7)
axes[1].plot(t, [r.total_force for r in snapped.records],
             label="snap-through latch via raw channel")
axes[1].plot(t, [r.z / 100 for r in snapped.records], lw=0.6,
             label="z/100 (mm)")
axes[1].set_xlabel("t (s)"), axes[1].legend(fontsize=7)

fig.tight_layout()
fig.savefig(f"{OUT}/06_raw_wrapper.png", dpi=120)
print(f"wrote {OUT}/06_raw_wrapper.png")
