"""Fixed-rate session engine: tick loop, command application, recording.

Tick pipeline, in fixed order:
  1. apply script and live commands that became due
  2. plant step (dynamic mode uses the previous tick's total force)
  3. DOF sampling and crossing detection
  4. force computation, then force-wave phase advance
  5. record
  6. frame emission at the stream-rate decimation, raw-channel publish

One thread (the caller of tick/run) owns all simulation state; live
commands cross over through a thread-safe queue and are applied in step 1.
"""

from __future__ import annotations

import json
import math
import queue
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import dof as dof_engine
from .core import DOF_PARAMS, HAPTIC_PARAMS, SceneRegistry
from .dof import DofEvent
from .errors import DegenerateRange, SceneError
from .forces import FingertipState, advance_wave_phases, total_force
from .plant import (Constant, PlantConfig, Trajectory, Waypoints,
                    step_dynamic, step_kinematic)
from .script import (Kill, Script, ScriptError, SetParams, Spawn,
                     commands_between, is_haptic_kind, loads, validate)
from .visual import Frame, VisualConfig, frame_to_dict, make_frame


@dataclass(frozen=True)
class SessionConfig:
    rate: float = 1000.0  # Hz
    duration: float = 1.0  # s; math.inf = run until stopped
    stream_rate: float = 60.0  # Hz, frame emission
    plant: PlantConfig = field(default_factory=PlantConfig)
    visual: VisualConfig = field(default_factory=VisualConfig)

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("tick rate must be > 0")
        if self.stream_rate > self.rate:
            raise ValueError("stream rate must be <= tick rate")


@dataclass(frozen=True)
class TickRecord:
    t: float  # s
    z: float  # mm
    v: float  # mm/s
    total_force: float  # N
    forces: dict[int, float]  # per-instance, N
    samples: dict[int, float]  # DOF id -> value
    events: tuple[DofEvent, ...]


@dataclass
class Recording:
    config: SessionConfig
    records: list[TickRecord]
    events: list[DofEvent]
    frames: list[Frame]


def config_from_script(script: Script | None, *, rate: float | None = None,
                       duration: float | None = None,
                       stream_rate: float | None = None,
                       visual: VisualConfig | None = None) -> SessionConfig:
    """Resolve a session config from script header plus explicit overrides."""
    fields: dict = {}
    if script is not None:
        fields.update(rate=script.effective_rate,
                      duration=script.effective_duration,
                      plant=script.effective_plant)
    if rate is not None:
        fields["rate"] = rate
    if duration is not None:
        fields["duration"] = duration
    if visual is not None:
        fields["visual"] = visual
    if stream_rate is not None:
        fields["stream_rate"] = stream_rate
    elif fields.get("rate", 1000.0) < SessionConfig().stream_rate:
        fields["stream_rate"] = fields["rate"]  # slow ticks: stream every tick
    return SessionConfig(**fields)


class RawChannel:
    """Per-tick transducer-level I/O: read (z, v, t), write next-tick force.

    Backed by a hidden full-travel monoforce whose force is rewritten each
    tick from the latest subscriber command. Commands apply on the tick
    after receipt; a command that sat unapplied for two or more ticks is
    dropped and counted stale.
    """

    def __init__(self, session: "Session",
                 callback: Callable[[float, float, float], float | None] | None = None):
        self._session = session
        self.callback = callback
        self.last_state: tuple[float, float, float] | None = None  # (z, v, t)
        self.stale_dropped = 0
        self._lock = threading.Lock()
        self._pending: tuple[int, float] | None = None  # (receipt tick, N)
        cfg = session.config.plant
        self.instance_id = session.registry.spawn_haptic(
            "monoforce", base=cfg.z_min, size=cfg.z_max - cfg.z_min,
            params={"force": 0.0}, at=session.now, hidden=True,
        )

    def send_force(self, force: float) -> None:
        """Request the given force (N) starting next tick."""
        with self._lock:
            self._pending = (self._session.ticks_done, float(force))

    def close(self) -> None:
        if self.instance_id in self._session.registry.haptics:
            self._session.registry.kill_haptic(self.instance_id)
        self._session.raw = None

    # called from the tick thread, step 1
    def _apply(self, tick_index: int) -> None:
        with self._lock:
            pending, self._pending = self._pending, None
        if pending is None:
            return
        receipt, force = pending
        if tick_index - receipt >= 2:
            self.stale_dropped += 1
            return
        self._session.registry.haptics[self.instance_id].params["force"] = force

    # called from the tick thread, step 6
    def _publish(self, s: FingertipState) -> None:
        self.last_state = (s.z, s.v, s.t)
        if self.callback is not None:
            force = self.callback(s.z, s.v, s.t)
            if force is not None:
                self.send_force(force)


class Session:
    """One simulation run; owns the registry, plant state and recorder."""

    def __init__(self, script: Script | None = None,
                 config: SessionConfig | None = None, *, collect: bool = True):
        if script is not None:
            diags = validate(script)
            if diags:
                raise ScriptError(diags)
        self.script = script
        self.config = config if config is not None else config_from_script(script)
        self.dt = 1.0 / self.config.rate
        self.n_ticks: int | None = (
            None if math.isinf(self.config.duration)
            else int(round(self.config.duration * self.config.rate))
        )
        self.frame_stride = max(1, round(self.config.rate / self.config.stream_rate))
        self.registry = SceneRegistry()
        self.names: dict[str, int] = {}
        self.collect = collect
        self.records: list[TickRecord] = []
        self.all_events: list[DofEvent] = []
        self.frames: list[Frame] = []
        self.frame_sinks: list[Callable[[dict], None]] = []
        self.event_sinks: list[Callable[[dict], None]] = []
        self.raw: RawChannel | None = None
        self.live_intent: float | None = None
        self.ticks_done = 0
        self._live_queue: "queue.Queue[tuple[dict, Callable | None]]" = queue.Queue()
        self._script_offset = 0.0
        self._stop = threading.Event()

        traj = self._script_trajectory(script)
        z0 = self._clamp(traj.value(0.0))
        self.trajectory: Trajectory = traj
        self.state = FingertipState(z=z0, v=0.0, t=-self.dt)
        self.prev_total = 0.0

    # -- helpers ------------------------------------------------------------

    def _script_trajectory(self, script: Script | None) -> Trajectory:
        if script is not None and script.intent:
            return Waypoints(list(script.intent))
        cfg = self.config.plant
        return Constant((cfg.z_min + cfg.z_max) / 2.0)

    def _clamp(self, z: float) -> float:
        cfg = self.config.plant
        return min(cfg.z_max, max(cfg.z_min, z))

    @property
    def now(self) -> float:
        """Session time of the tick currently being (or about to be) run."""
        return self.ticks_done / self.config.rate

    # -- live steering (any thread) ------------------------------------------

    def submit(self, payload: dict, reply: Callable[[dict], None] | None = None):
        """Queue a live command; applied in step 1 of the next tick."""
        self._live_queue.put((payload, reply))

    def open_raw_channel(self, callback=None) -> RawChannel:
        if self.raw is not None:
            raise SceneError("raw channel already open")
        self.raw = RawChannel(self, callback)
        return self.raw

    def stop(self) -> None:
        self._stop.set()

    # -- command application (tick thread) ------------------------------------

    def _apply_script_command(self, cmd) -> None:
        t = self.now
        if isinstance(cmd, Spawn):
            params = dict(cmd.params)
            if is_haptic_kind(cmd.kind):
                base = params.pop("base")
                size = params.pop("size")
                iid = self.registry.spawn_haptic(cmd.kind, base, size, params, at=t)
            else:
                iid = self.registry.spawn_dof(cmd.kind, params, at=t)
            self.names[cmd.name] = iid
        elif isinstance(cmd, SetParams):
            self.registry.set_params(self.names[cmd.name], cmd.fields)
        elif isinstance(cmd, Kill):
            self.registry.kill(self.names.pop(cmd.name))

    def _apply_live(self, payload: dict) -> dict:
        """Apply one live command dict; returns the reply message."""
        if not isinstance(payload, dict):
            return {"type": "error", "code": "Malformed",
                    "message": "command must be a JSON object"}
        try:
            if "set_intent" in payload:
                z = float(payload["set_intent"])
                if not math.isfinite(z):
                    raise ValueError("intent must be finite")
                self.live_intent = z
                return {"type": "ok", "op": "set_intent"}
            if "spawn" in payload:
                spec = dict(payload["spawn"])
                name = str(spec.pop("name"))
                kind = str(spec.pop("kind"))
                params = {k: float(v) for k, v in spec.items()}
                if name in self.names:
                    return {"type": "error", "code": "DuplicateName",
                            "message": f"name {name!r} is already live"}
                if kind not in HAPTIC_PARAMS and kind not in DOF_PARAMS:
                    return {"type": "error", "code": "InvalidParam",
                            "message": f"unknown primitive kind {kind!r}"}
                self._apply_script_command(
                    Spawn(t=self.now, name=name, kind=kind, params=params))
                return {"type": "ok", "op": "spawn", "name": name,
                        "id": self.names[name]}
            if "set" in payload:
                spec = dict(payload["set"])
                name = str(spec.pop("name"))
                if name not in self.names:
                    return {"type": "error", "code": "UnknownName",
                            "message": f"no live instance named {name!r}"}
                fields = {k: float(v) for k, v in spec.items()}
                self.registry.set_params(self.names[name], fields)
                return {"type": "ok", "op": "set", "name": name}
            if "kill" in payload:
                name = str(payload["kill"])
                if name not in self.names:
                    return {"type": "error", "code": "UnknownName",
                            "message": f"no live instance named {name!r}"}
                self.registry.kill(self.names.pop(name))
                return {"type": "ok", "op": "kill", "name": name}
            if "load_script" in payload:
                loaded = loads(str(payload["load_script"]))
                self.script = loaded
                self._script_offset = self.now
                if loaded.intent:
                    self.trajectory = Waypoints(
                        [(t + self.now, z) for t, z in loaded.intent])
                    self.live_intent = None
                return {"type": "ok", "op": "load_script",
                        "commands": len(loaded.commands)}
            return {"type": "error", "code": "Malformed",
                    "message": f"unknown command {sorted(payload)!r}"}
        except ScriptError as exc:
            return {"type": "error", "code": "ScriptError",
                    "message": str(exc)}
        except SceneError as exc:
            return {"type": "error", "code": type(exc).__name__,
                    "message": str(exc)}
        except (KeyError, TypeError, ValueError) as exc:
            return {"type": "error", "code": "Malformed", "message": repr(exc)}

    # -- the tick itself -------------------------------------------------------

    def tick(self) -> TickRecord:
        k = self.ticks_done
        t = k / self.config.rate
        prev_t = (k - 1) / self.config.rate if k > 0 else -math.inf

        # 1. commands due
        if self.script is not None:
            for cmd in commands_between(self.script,
                                        prev_t - self._script_offset,
                                        t - self._script_offset):
                self._apply_script_command(cmd)
        while True:
            try:
                payload, reply = self._live_queue.get_nowait()
            except queue.Empty:
                break
            result = self._apply_live(payload)
            if reply is not None:
                reply(result)
        if self.raw is not None:
            self.raw._apply(k)

        # 2. plant step
        cfg = self.config.plant
        if self.live_intent is not None:
            target: Trajectory = Constant(self.live_intent)
        else:
            target = self.trajectory
        if cfg.mode == "dynamic":
            s = step_dynamic(self.state, self.prev_total, target, t, self.dt, cfg)
        else:
            if self.live_intent is not None:
                z = self._clamp(self.live_intent)
                s = FingertipState(z=z, v=(z - self.state.z) / self.dt, t=t)
            else:
                s = step_kinematic(target, t, self.dt, cfg)

        # 3. DOF sampling and crossings
        samples: dict[int, float] = {}
        events: list[DofEvent] = []
        for d in self.registry.dofs.values():
            sample, evts = dof_engine.step(d, s, self.dt)
            if sample is not None:
                samples[d.id] = sample.value
            events.extend(evts)

        # 4. forces
        try:
            fs = total_force(self.registry, s)
        except DegenerateRange as exc:
            raise DegenerateRange(exc.instance_id, t) from None
        advance_wave_phases(self.registry, self.dt)

        # 5. record
        rec = TickRecord(t=t, z=s.z, v=s.v, total_force=fs.total,
                         forces=fs.contributions, samples=samples,
                         events=tuple(events))
        if self.collect:
            self.records.append(rec)
            self.all_events.extend(events)

        # 6. frame + publications
        frame: Frame | None = None
        if k % self.frame_stride == 0:
            frame = make_frame(self.registry, s, fs, self.config.visual)
            if self.collect:
                self.frames.append(frame)
        self.ticks_done = k + 1
        self.state = s
        self.prev_total = fs.total
        if frame is not None and self.frame_sinks:
            payload = dict(frame_to_dict(frame), type="frame")
            for sink in self.frame_sinks:
                sink(payload)
        if events and self.event_sinks:
            for e in events:
                msg = {"type": "event", "t": e.t, "dof_id": e.id,
                       "kind": e.kind, "speed": e.speed}
                for sink in self.event_sinks:
                    sink(msg)
        if self.raw is not None:
            self.raw._publish(s)
        return rec

    def run(self) -> Recording:
        """Run to the configured duration (virtual time, as fast as possible)."""
        while not self._stop.is_set() and \
                (self.n_ticks is None or self.ticks_done < self.n_ticks):
            self.tick()
        return Recording(config=self.config, records=self.records,
                         events=self.all_events, frames=self.frames)


def run(script: Script, config: SessionConfig | None = None) -> Recording:
    """Validate and run a script to completion; deterministic in kinematic
    mode (identical inputs give bit-identical recordings)."""
    session = Session(script, config)
    return session.run()


# -- export -------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".9g")


def recording_csv(recording: Recording) -> str:
    """Tick records as CSV: t_s,z_mm,v_mm_s,force_N plus one f_<id>_N column
    per instance that was ever live; cells are empty outside an instance's
    lifetime."""
    ids = sorted({i for rec in recording.records for i in rec.forces})
    header = "t_s,z_mm,v_mm_s,force_N" + "".join(f",f_{i}_N" for i in ids)
    lines = [header]
    for rec in recording.records:
        row = [_fmt(rec.t), _fmt(rec.z), _fmt(rec.v), _fmt(rec.total_force)]
        for i in ids:
            f = rec.forces.get(i)
            row.append("" if f is None else _fmt(f))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def events_csv(recording: Recording) -> str:
    lines = ["t_s,dof_id,kind,speed_mm_s"]
    for e in recording.events:
        lines.append(f"{_fmt(e.t)},{e.id},{e.kind},{_fmt(e.speed)}")
    return "\n".join(lines) + "\n"


def frames_json(recording: Recording) -> str:
    return json.dumps([frame_to_dict(f) for f in recording.frames],
                      separators=(",", ":")) + "\n"


def export(recording: Recording, out_dir, *, frames: bool = True) -> list[Path]:
    """Write recording.csv, events.csv and (optionally) frames.json."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in [("recording.csv", recording_csv(recording)),
                           ("events.csv", events_csv(recording))] + (
                [("frames.json", frames_json(recording))] if frames else []):
            path = out / name
            path.write_text(text, encoding="utf-8", newline="\n")
            written.append(path)
        return written
    except OSError as exc:
        raise OSError(f"export to {out} failed: {exc}") from exc
