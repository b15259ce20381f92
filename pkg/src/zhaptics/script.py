"""Timed scene-script language (`.gfs` files).

Line-oriented grammar, `#` starts a comment anywhere:

    rate <Hz>
    duration <s>
    plant kinematic|dynamic [mass=..] [kp=..] [kd=..] [zmin=..] [zmax=..]
    intent <t>:<z> <t>:<z> ...
    at <t> spawn <name> <kind> key=val ...
    at <t> set <name> key=val ...
    at <t> kill <name>

Times are seconds, spatial values mm, forces N, periods ms, frequencies Hz.
Spawn keys are `base`/`size` plus the kind's own parameters (`force`,
`force_base`/`force_range`, `damping`, `direction`, `freq`/`amp`, `period`,
`threshold`). Parsing reports syntax problems; `validate` reports semantic
ones (name resolution, schemas, value ranges, capacity replay). Every
diagnostic carries the 1-based line and column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import DOF_PARAMS, HAPTIC_PARAMS, MAX_INSTANCES, param_value_error
from .plant import PlantConfig

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN = re.compile(r"\S+")

_PLANT_KEYS = {"mass": "mass", "kp": "kp", "kd": "kd",
               "zmin": "z_min", "zmax": "z_max"}


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    code: str
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.code}: {self.message}"


class ScriptError(Exception):
    """Raised when parsing or validation produced diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Spawn:
    t: float
    name: str
    kind: str
    params: dict[str, float]
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=1)


@dataclass(frozen=True)
class SetParams:
    t: float
    name: str
    fields: dict[str, float]
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=1)


@dataclass(frozen=True)
class Kill:
    t: float
    name: str
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=1)


Command = Spawn | SetParams | Kill


@dataclass(frozen=True)
class Script:
    """Parsed scene script; None header fields were not declared."""

    rate: float | None = None
    duration: float | None = None
    plant: PlantConfig | None = None
    intent: tuple[tuple[float, float], ...] | None = None
    commands: tuple[Command, ...] = ()
    intent_line: int = field(compare=False, default=0)
    rate_line: int = field(compare=False, default=0)
    duration_line: int = field(compare=False, default=0)

    @property
    def effective_rate(self) -> float:
        return self.rate if self.rate is not None else 1000.0

    @property
    def effective_duration(self) -> float:
        if self.duration is not None:
            return self.duration
        last = 1.0
        if self.commands:
            last = max(last, max(c.t for c in self.commands))
        if self.intent:
            last = max(last, self.intent[-1][0])
        return last

    @property
    def effective_plant(self) -> PlantConfig:
        return self.plant if self.plant is not None else PlantConfig()


def is_haptic_kind(kind: str) -> bool:
    return kind in HAPTIC_PARAMS


def _spawn_schema(kind: str) -> dict[str, str]:
    if is_haptic_kind(kind):
        schema = {"base": "mm", "size": "mm"}
        schema.update(HAPTIC_PARAMS[kind])
        return schema
    return dict(DOF_PARAMS[kind])


class _Parser:
    def __init__(self, text: str):
        self.diags: list[Diagnostic] = []
        self.rate: float | None = None
        self.duration: float | None = None
        self.plant: PlantConfig | None = None
        self.intent: tuple[tuple[float, float], ...] | None = None
        self.intent_line = 0
        self.rate_line = 0
        self.duration_line = 0
        self.commands: list[Command] = []
        self.text = text

    def fail(self, line: int, col: int, code: str, message: str) -> None:
        self.diags.append(Diagnostic(line, col, code, message))

    def number(self, tok: str, line: int, col: int, what: str) -> float | None:
        try:
            return float(tok)
        except ValueError:
            self.fail(line, col, "bad-number", f"{what} {tok!r} is not a number")
            return None

    def keyvals(self, tokens: list[tuple[str, int]], line: int,
                ) -> dict[str, float] | None:
        out: dict[str, float] = {}
        ok = True
        for tok, col in tokens:
            key, eq, val = tok.partition("=")
            if not eq or not val:
                self.fail(line, col, "syntax",
                          f"expected key=value, got {tok!r}")
                ok = False
                continue
            if not _IDENT.match(key):
                self.fail(line, col, "syntax", f"bad parameter name {key!r}")
                ok = False
                continue
            if key in out:
                self.fail(line, col, "syntax", f"duplicate key {key!r}")
                ok = False
                continue
            num = self.number(val, line, col + len(key) + 1, f"value for {key!r}")
            if num is None:
                ok = False
                continue
            out[key] = num
        return out if ok else None

    def name_token(self, tok: str, line: int, col: int) -> str | None:
        if not _IDENT.match(tok):
            self.fail(line, col, "syntax", f"bad instance name {tok!r}")
            return None
        return tok

    def parse(self) -> Script:
        for lineno, raw in enumerate(self.text.splitlines(), 1):
            code = raw.split("#", 1)[0]
            tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(code)]
            if not tokens:
                continue
            head, col = tokens[0]
            handler = getattr(self, f"_line_{head}", None)
            if handler is None:
                self.fail(lineno, col, "syntax", f"unknown directive {head!r}")
                continue
            handler(tokens, lineno)
        return Script(
            rate=self.rate, duration=self.duration, plant=self.plant,
            intent=self.intent, commands=tuple(self.commands),
            intent_line=self.intent_line, rate_line=self.rate_line,
            duration_line=self.duration_line,
        )

    def _single_number(self, tokens, lineno, what) -> float | None:
        if len(tokens) != 2:
            self.fail(lineno, tokens[0][1], "syntax",
                      f"{what} takes exactly one value")
            return None
        return self.number(tokens[1][0], lineno, tokens[1][1], what)

    def _line_rate(self, tokens, lineno):
        if self.rate is not None:
            self.fail(lineno, tokens[0][1], "duplicate-directive",
                      "rate declared twice")
            return
        self.rate = self._single_number(tokens, lineno, "rate")
        self.rate_line = lineno

    def _line_duration(self, tokens, lineno):
        if self.duration is not None:
            self.fail(lineno, tokens[0][1], "duplicate-directive",
                      "duration declared twice")
            return
        self.duration = self._single_number(tokens, lineno, "duration")
        self.duration_line = lineno

    def _line_plant(self, tokens, lineno):
        if self.plant is not None:
            self.fail(lineno, tokens[0][1], "duplicate-directive",
                      "plant declared twice")
            return
        if len(tokens) < 2:
            self.fail(lineno, tokens[0][1], "syntax",
                      "plant needs a mode (kinematic|dynamic)")
            return
        mode, mode_col = tokens[1]
        if mode not in ("kinematic", "dynamic"):
            self.fail(lineno, mode_col, "syntax",
                      f"unknown plant mode {mode!r}")
            return
        kv = self.keyvals(tokens[2:], lineno)
        if kv is None:
            return
        unknown = [k for k in kv if k not in _PLANT_KEYS]
        if unknown:
            self.fail(lineno, tokens[0][1], "unknown-key",
                      f"unknown plant key {unknown[0]!r}")
            return
        cfg = {"mode": mode}
        cfg.update({_PLANT_KEYS[k]: v for k, v in kv.items()})
        try:
            self.plant = PlantConfig(**cfg)
        except Exception as exc:
            self.fail(lineno, tokens[0][1], "invalid-param", str(exc))

    def _line_intent(self, tokens, lineno):
        if self.intent is not None:
            self.fail(lineno, tokens[0][1], "duplicate-directive",
                      "intent declared twice")
            return
        points: list[tuple[float, float]] = []
        ok = True
        for tok, col in tokens[1:]:
            t_str, sep, z_str = tok.partition(":")
            if not sep:
                self.fail(lineno, col, "syntax",
                          f"expected <t>:<z> waypoint, got {tok!r}")
                ok = False
                continue
            t = self.number(t_str, lineno, col, "waypoint time")
            z = self.number(z_str, lineno, col + len(t_str) + 1, "waypoint z")
            if t is None or z is None:
                ok = False
                continue
            points.append((t, z))
        if not points:
            self.fail(lineno, tokens[0][1], "syntax",
                      "intent needs at least one <t>:<z> waypoint")
            ok = False
        if ok:
            self.intent = tuple(points)
            self.intent_line = lineno

    def _line_at(self, tokens, lineno):
        if len(tokens) < 3:
            self.fail(lineno, tokens[0][1], "syntax",
                      "expected: at <t> spawn|set|kill ...")
            return
        t = self.number(tokens[1][0], lineno, tokens[1][1], "command time")
        if t is None:
            return
        verb, verb_col = tokens[2]
        rest = tokens[3:]
        if verb == "spawn":
            if len(rest) < 2:
                self.fail(lineno, verb_col, "syntax",
                          "expected: spawn <name> <kind> key=val ...")
                return
            name = self.name_token(rest[0][0], lineno, rest[0][1])
            kind, kind_col = rest[1]
            if name is None:
                return
            if kind not in HAPTIC_PARAMS and kind not in DOF_PARAMS:
                self.fail(lineno, kind_col, "unknown-kind",
                          f"unknown primitive kind {kind!r}")
                return
            params = self.keyvals(rest[2:], lineno)
            if params is None:
                return
            self.commands.append(Spawn(t, name, kind, params, lineno, tokens[0][1]))
        elif verb == "set":
            if len(rest) < 2:
                self.fail(lineno, verb_col, "syntax",
                          "expected: set <name> key=val ...")
                return
            name = self.name_token(rest[0][0], lineno, rest[0][1])
            if name is None:
                return
            fields = self.keyvals(rest[1:], lineno)
            if fields is None:
                return
            self.commands.append(SetParams(t, name, fields, lineno, tokens[0][1]))
        elif verb == "kill":
            if len(rest) != 1:
                self.fail(lineno, verb_col, "syntax",
                          "expected: kill <name>")
                return
            name = self.name_token(rest[0][0], lineno, rest[0][1])
            if name is None:
                return
            self.commands.append(Kill(t, name, lineno, tokens[0][1]))
        else:
            self.fail(lineno, verb_col, "syntax",
                      f"unknown command verb {verb!r}")


def try_parse(text: str) -> tuple[Script, list[Diagnostic]]:
    """Parse, collecting syntax diagnostics; bad lines are skipped."""
    parser = _Parser(text)
    script = parser.parse()
    return script, parser.diags


def parse(text: str) -> Script:
    script, diags = try_parse(text)
    if diags:
        raise ScriptError(diags)
    return script


def validate(script: Script) -> list[Diagnostic]:
    """Semantic checks over a parsed script; empty list means valid.

    Replays spawns/kills symbolically so a script that validates clean can
    never trip the instance cap at run time.
    """
    diags: list[Diagnostic] = []

    def fail(cmd_or_line, code, message):
        if isinstance(cmd_or_line, int):
            diags.append(Diagnostic(cmd_or_line, 1, code, message))
        else:
            diags.append(Diagnostic(cmd_or_line.line, cmd_or_line.col, code, message))

    if script.rate is not None and not script.rate > 0:
        fail(script.rate_line, "invalid-param", "rate must be > 0")
    if script.duration is not None and not script.duration > 0:
        fail(script.duration_line, "invalid-param", "duration must be > 0")
    if script.intent is not None:
        times = [t for t, _ in script.intent]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            fail(script.intent_line, "invalid-param",
                 "intent waypoint times must be strictly increasing")

    live: dict[str, str] = {}
    n_haptic = 0
    n_dof = 0
    prev_t = None
    declared_duration = script.duration

    for cmd in script.commands:
        if prev_t is not None and cmd.t < prev_t:
            fail(cmd, "non-monotone-time",
                 f"command time {cmd.t:g} precedes earlier command at {prev_t:g}")
        prev_t = max(cmd.t, prev_t) if prev_t is not None else cmd.t
        if cmd.t < 0:
            fail(cmd, "invalid-param", "command time must be >= 0")
        if declared_duration is not None and cmd.t > declared_duration:
            fail(cmd, "after-duration",
                 f"command at {cmd.t:g}s is after duration {declared_duration:g}s")

        if isinstance(cmd, Spawn):
            if cmd.name in live:
                fail(cmd, "duplicate-name",
                     f"name {cmd.name!r} is already live at {cmd.t:g}s")
                continue
            schema = _spawn_schema(cmd.kind)
            bad = False
            for key, value in cmd.params.items():
                if key not in schema:
                    fail(cmd, "unknown-key",
                         f"{key!r} is not a parameter of kind {cmd.kind!r}")
                    bad = True
                    continue
                msg = param_value_error(cmd.kind, key, value)
                if msg:
                    fail(cmd, "invalid-param", msg)
                    bad = True
            missing = set(schema) - set(cmd.params)
            if missing:
                fail(cmd, "missing-param",
                     f"kind {cmd.kind!r} missing parameter(s): "
                     f"{', '.join(sorted(missing))}")
                bad = True
            if is_haptic_kind(cmd.kind):
                if n_haptic >= MAX_INSTANCES:
                    fail(cmd, "capacity-exceeded",
                         f"{MAX_INSTANCES} haptic instances already live at "
                         f"{cmd.t:g}s")
                    bad = True
                else:
                    n_haptic += 1
            else:
                if n_dof >= MAX_INSTANCES:
                    fail(cmd, "capacity-exceeded",
                         f"{MAX_INSTANCES} DOF instances already live at "
                         f"{cmd.t:g}s")
                    bad = True
                else:
                    n_dof += 1
            live[cmd.name] = cmd.kind
        elif isinstance(cmd, SetParams):
            kind = live.get(cmd.name)
            if kind is None:
                fail(cmd, "unknown-name", f"no live instance named {cmd.name!r}")
                continue
            schema = _spawn_schema(kind) if is_haptic_kind(kind) \
                else DOF_PARAMS[kind]
            for key, value in cmd.fields.items():
                if key not in schema:
                    fail(cmd, "unknown-key",
                         f"{key!r} is not a parameter of kind {kind!r}")
                    continue
                msg = param_value_error(kind, key, value)
                if msg:
                    fail(cmd, "invalid-param", msg)
        elif isinstance(cmd, Kill):
            kind = live.pop(cmd.name, None)
            if kind is None:
                fail(cmd, "unknown-name", f"no live instance named {cmd.name!r}")
            elif is_haptic_kind(kind):
                n_haptic -= 1
            else:
                n_dof -= 1

    return diags


def loads(text: str) -> Script:
    """Parse and validate; raises ScriptError carrying every diagnostic."""
    script, diags = try_parse(text)
    diags = diags + validate(script)
    if diags:
        raise ScriptError(diags)
    return script


def load(path) -> Script:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _num(x: float) -> str:
    return repr(float(x))


def format_script(script: Script) -> str:
    """Canonical printing; parse(format_script(s)) == s."""
    lines = []
    if script.rate is not None:
        lines.append(f"rate {_num(script.rate)}")
    if script.duration is not None:
        lines.append(f"duration {_num(script.duration)}")
    if script.plant is not None:
        p = script.plant
        lines.append(
            f"plant {p.mode} mass={_num(p.mass)} kp={_num(p.kp)} "
            f"kd={_num(p.kd)} zmin={_num(p.z_min)} zmax={_num(p.z_max)}"
        )
    if script.intent is not None:
        pairs = " ".join(f"{_num(t)}:{_num(z)}" for t, z in script.intent)
        lines.append(f"intent {pairs}")
    for cmd in script.commands:
        if isinstance(cmd, Spawn):
            kv = " ".join(f"{k}={_num(v)}" for k, v in cmd.params.items())
            lines.append(f"at {_num(cmd.t)} spawn {cmd.name} {cmd.kind}"
                         + (f" {kv}" if kv else ""))
        elif isinstance(cmd, SetParams):
            kv = " ".join(f"{k}={_num(v)}" for k, v in cmd.fields.items())
            lines.append(f"at {_num(cmd.t)} set {cmd.name} {kv}")
        else:
            lines.append(f"at {_num(cmd.t)} kill {cmd.name}")
    return "\n".join(lines) + "\n"


def commands_between(script: Script, t0: float, t1: float) -> list[Command]:
    """Commands with t0 < t <= t1, in file order (stable for equal times)."""
    return [c for c in script.commands if t0 < c.t <= t1]
