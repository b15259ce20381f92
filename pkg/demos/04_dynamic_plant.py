"""Dynamic plant: feeling springs and impacts instead of replaying intent.

In dynamic mode the scripted intent becomes a PD target for a point mass,
and the scene pushes back. Descending into a ramp spring settles at the
force balance instead of the target; entering a one-way damper produces the
sudden velocity kink of an impact.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pathlib

from zhaptics import parse, run

OUT = "demos/out"
pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)

SPRING = """\
rate 1000
duration 3
plant dynamic mass=0.02 kp=0.5 kd=0.2 zmin=0 zmax=40
intent 0:25 0.5:25 1.5:5 3:5
at 0 spawn spring linear_ramp base=0 size=14 force_base=0.7 force_range=-0.7
"""

rec = run(parse(SPRING))
t = [r.t for r in rec.records]
z = [r.z for r in rec.records]
f = [r.total_force for r in rec.records]

# where the PD pull and the spring push cancel: kp*(5 - z) + spring(z) = 0
kp, fb, fr, size, target = 0.5, 0.7, -0.7, 14.0, 5.0
z_eq = (kp * target + fb) / (kp - fr / size)
print(f"intent target {target} mm, spring equilibrium {z_eq:.3f} mm, "
      f"settled at {z[-1]:.3f} mm")

IMPACT = """\
rate 1000
duration 2
plant dynamic mass=0.02 kp=0.5 kd=0.2 zmin=0 zmax=40
intent 0:25 0.5:25 1.0:5 2:5
at 0 spawn brake directional_dashpot base=0 size=12 damping=0.02 direction=0
"""

rec2 = run(parse(IMPACT))
t2 = [r.t for r in rec2.records]
v2 = [r.v for r in rec2.records]
entry = next(r.t for r in rec2.records if r.z <= 12.0)
print(f"one-way damper entered at t={entry:.3f}s; "
      f"peak descent speed {min(v2):.1f} mm/s")

fig, axes = plt.subplots(2, 1, figsize=(9, 5), sharex=True)
axes[0].plot(t, z, label="z (spring scene)")
axes[0].axhline(z_eq, color="g", lw=0.8, label=f"force balance {z_eq:.2f} mm")
axes[0].axhline(target, color="k", lw=0.6, ls=":", label="intent target")
axes[0].set_ylabel("mm"), axes[0].legend(fontsize=7)
ax0 = axes[0].twinx()
ax0.plot(t, f, color="orange", lw=0.6)
ax0.set_ylabel("force (N)", color="orange")

axes[1].plot(t2, v2, label="v (impact scene)")
axes[1].axvline(entry, color="r", lw=0.8, label="damper entry")
axes[1].set_xlabel("t (s)"), axes[1].set_ylabel("mm/s")
axes[1].legend(fontsize=7)

fig.tight_layout()
fig.savefig(f"{OUT}/04_dynamic_plant.png", dpi=120)
print(f"wrote {OUT}/04_dynamic_plant.png")
