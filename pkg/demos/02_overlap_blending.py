"""Block segments and opacity-weighted color blending.

Two overlapping instances partition the axis into three bands; the middle
band's color is the opacity-weighted mean of the contributors and its
opacity is their maximum. A strong instance barely tinted by a weak one is
shown alongside an equal-strength mix.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pathlib

from zhaptics import SceneRegistry, blend, opacity_of, partition_segments
from zhaptics.visual import DEFAULT_VISUAL

OUT = "demos/out"
pathlib.Path(OUT).mkdir(parents=True, exist_ok=True)


def show_scene(ax, instances, title):
    segs = partition_segments(instances)
    for seg in segs:
        ax.barh(0.5, seg.z1 - seg.z0, left=seg.z0, height=1.0,
                color=(seg.color.r, seg.color.g, seg.color.b),
                alpha=max(seg.color.a, 0.05), edgecolor="k", linewidth=0.5)
        ax.text((seg.z0 + seg.z1) / 2, 0.5,
                f"{len(seg.contributors)}x\na={seg.color.a:.2f}",
                ha="center", va="center", fontsize=7)
    ax.set_xlim(-1, 26), ax.set_yticks([])
    ax.set_xlabel("z (mm)"), ax.set_title(title, fontsize=9)
    return segs


fig, axes = plt.subplots(2, 1, figsize=(9, 4))

reg = SceneRegistry()
strong = reg.haptics[reg.spawn_haptic("monoforce", base=0, size=15,
                                      params={"force": 0.9})]
weak = reg.haptics[reg.spawn_haptic("dashpot", base=10, size=15,
                                    params={"damping": 0.001})]
segs = show_scene(axes[0], [strong, weak],
                  "strong grey shelf (a=0.9) + weak blue damper (a=0.1)")
mid = segs[1]
print("middle band color:", (round(mid.color.r, 3), round(mid.color.g, 3),
                             round(mid.color.b, 3)), "alpha", mid.color.a)
print("  opacities:", opacity_of(strong), opacity_of(weak))

reg2 = SceneRegistry()
a = reg2.haptics[reg2.spawn_haptic("monoforce", base=0, size=15,
                                   params={"force": 1.0})]
b = reg2.haptics[reg2.spawn_haptic("force_wave", base=10, size=15,
                                   params={"freq": 20, "amp": 1.0})]
show_scene(axes[1], [a, b], "two saturated instances mix to the midpoint")

# the rule itself, on raw tuples: max alpha, never additive
print("equal blend:", blend([((1, 0, 0), 1.0), ((0, 0, 1), 1.0)]))
print("transparent neighbor is invisible:",
      blend([((1, 0, 0), 0.0), ((0.2, 0.8, 0.2), 0.6)]))

fig.tight_layout()
fig.savefig(f"{OUT}/02_overlap_blending.png", dpi=120)
print(f"wrote {OUT}/02_overlap_blending.png")
