"""Fixed-rate haptic scene engine over a simulated up/down fingertip axis.

Typed force primitives (monoforce, linear ramp, dashpot, directional
dashpot, force wave) and control-extraction primitives are instantiated
into a scene registry; a 1 kHz tick loop superposes their forces over a
scripted or live-steered fingertip, extracts control values and events,
renders a headless visual model (cursor, blended block segments, sign
grid) and records everything in physical units.
"""

from .core import (DOF_KINDS, DOF_PARAMS, HAPTIC_KINDS, HAPTIC_PARAMS,
                   MAX_INSTANCES, DofPrimitive, HapticPrimitive,
                   SceneRegistry, ZRange)
from .dof import DofEvent, DofSample, detect_crossings, sample_continuous
from .errors import (CapacityExceeded, DegenerateRange, InvalidParam,
                     SceneError, UnknownId)
from .forces import (FingertipState, ForceSample, advance_wave_phases,
                     primitive_force, total_force)
from .plant import (Constant, PlantConfig, Ramp, Sine, Trajectory, Waypoints,
                    step_dynamic, step_kinematic)
from .runtime import (Recording, Session, SessionConfig, TickRecord,
                      config_from_script, export, run)
from .script import (Diagnostic, Kill, Script, ScriptError, SetParams, Spawn,
                     commands_between, format_script, load, loads, parse,
                     try_parse, validate)
from .visual import (BlockSegment, Frame, Rgba, SignEntry, VisualConfig,
                     blend, frame_to_dict, make_frame, opacity_of,
                     partition_segments, sign_grid)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
