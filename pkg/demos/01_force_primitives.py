"""Tour of the five force primitives.

Sweeps a virtual fingertip through each primitive's active range and plots
the resulting force laws: constant shelf, linear ramp, the two viscous
dampers (force against velocity), and the time-domain force wave.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from zhaptics import (FingertipState, SceneRegistry, advance_wave_phases,
                      primitive_force)

OUT = "demos/out"


def sweep_z(p, zs, v=0.0):
    return [primitive_force(p, FingertipState(z=z, v=v, t=0.0)) for z in zs]


reg = SceneRegistry()
shelf = reg.haptics[reg.spawn_haptic("monoforce", base=5, size=10,
                                     params={"force": 0.5})]
ramp = reg.haptics[reg.spawn_haptic("linear_ramp", base=5, size=10,
                                    params={"force_base": 0.8,
                                            "force_range": -0.8})]
damper = reg.haptics[reg.spawn_haptic("dashpot", base=0, size=20,
                                      params={"damping": 0.004})]
one_way = reg.haptics[reg.spawn_haptic("directional_dashpot", base=0, size=20,
                                       params={"damping": 0.004,
                                               "direction": 0})]
wave = reg.haptics[reg.spawn_haptic("force_wave", base=0, size=20,
                                    params={"freq": 25.0, "amp": 0.2})]

zs = np.linspace(0, 20, 400)
vs = np.linspace(-300, 300, 400)

fig, axes = plt.subplots(1, 4, figsize=(16, 3.2))

axes[0].plot(zs, sweep_z(shelf, zs), label="monoforce 0.5 N on [5,15]")
axes[0].plot(zs, sweep_z(ramp, zs), label="ramp 0.8→0 N on [5,15]")
axes[0].set_xlabel("z (mm)"), axes[0].set_ylabel("force (N)")
axes[0].legend(fontsize=7), axes[0].set_title("position-dependent kinds")

axes[1].plot(vs, [primitive_force(damper, FingertipState(10, v, 0)) for v in vs],
             label="dashpot")
axes[1].plot(vs, [primitive_force(one_way, FingertipState(10, v, 0)) for v in vs],
             label="directional (down only)")
axes[1].set_xlabel("v (mm/s)"), axes[1].set_ylabel("force (N)")
axes[1].legend(fontsize=7), axes[1].set_title("velocity-dependent kinds")

# run the wave for a quarter second of 1 kHz ticks
dt, ticks = 0.001, 250
trace = []
for _ in range(ticks):
    trace.append(primitive_force(wave, FingertipState(z=10, v=0, t=0)))
    advance_wave_phases(reg, dt)
axes[2].plot(np.arange(ticks) * dt, trace)
axes[2].set_xlabel("t (s)"), axes[2].set_title("force wave, 25 Hz / 0.2 N")

# out-of-range: everything reads 0 N
outside = [primitive_force(p, FingertipState(z=30, v=100, t=0))
           for p in (shelf, ramp, damper, one_way, wave)]
axes[3].bar(range(5), outside)
axes[3].set_xticks(range(5),
                   ["shelf", "ramp", "dashpot", "one-way", "wave"], fontsize=7)
axes[3].set_title("all kinds at z=30 mm (outside)")

print("force at z=7 inside the shelf:",
      primitive_force(shelf, FingertipState(7, 0, 0)), "N")
print("ramp force at its base:",
      primitive_force(ramp, FingertipState(5, 0, 0)), "N")
print("dashpot resisting a 100 mm/s press:",
      primitive_force(damper, FingertipState(10, -100, 0)), "N")
print("every kind at z=30 mm:", outside)

import pathlib

pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)
fig.tight_layout()
fig.savefig(f"{OUT}/01_force_primitives.png", dpi=120)
print(f"wrote {OUT}/01_force_primitives.png")
