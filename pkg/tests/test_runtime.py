import json
import math

import pytest

from zhaptics import (DegenerateRange, ScriptError, Session, SessionConfig,
                      config_from_script, parse, run)
from zhaptics.runtime import events_csv, export, frames_json, recording_csv


def make_session(text, **over):
    script = parse(text)
    return Session(script, config_from_script(script, **over))


# -- tick counting and pipeline order ----------------------------------------------

def test_two_seconds_at_1000hz_is_2000_records():
    rec = run(parse("rate 1000\nduration 2\nintent 0:10\n"))
    assert len(rec.records) == 2000
    assert rec.records[0].t == 0.0
    assert rec.records[1500].t == 1500 / 1000.0


def test_empty_scene_constant_intent_all_zero():
    rec = run(parse("rate 1000\nduration 0.5\nintent 0:10\n"))
    assert all(r.total_force == 0.0 and r.v == 0.0 for r in rec.records)
    assert all(r.z == 10.0 for r in rec.records)


def test_spawn_takes_effect_on_its_own_tick_not_before():
    rec = run(parse(
        "rate 1000\nduration 0.1\nintent 0:5\n"
        "at 0.05 spawn shelf monoforce base=0 size=10 force=0.5\n"
    ))
    by_t = {round(r.t * 1000): r for r in rec.records}
    assert by_t[49].total_force == 0.0
    assert by_t[50].total_force == 0.5  # first force at t, not t - dt
    assert by_t[49].forces == {}
    assert by_t[50].forces == {1: 0.5}


def test_kill_removes_force_and_column_next_tick():
    rec = run(parse(
        "rate 1000\nduration 0.1\nintent 0:5\n"
        "at 0 spawn shelf monoforce base=0 size=10 force=0.5\n"
        "at 0.05 kill shelf\n"
    ))
    by_t = {round(r.t * 1000): r for r in rec.records}
    assert by_t[49].total_force == 0.5
    assert by_t[50].total_force == 0.0
    assert 1 not in by_t[50].forces


def test_wave_phase_starts_at_zero_on_spawn_tick():
    rec = run(parse(
        "rate 1000\nduration 0.2\nintent 0:5\n"
        "at 0 spawn w force_wave base=0 size=10 freq=2 amp=0.2\n"
    ))
    assert rec.records[0].total_force == 0.0  # sin(0)
    # a quarter period of 2 Hz later: 125 ticks
    assert rec.records[125].total_force == pytest.approx(0.2, abs=1e-9)


def test_dof_samples_and_events_recorded():
    rec = run(parse(
        "rate 1000\nduration 1\nintent 0:15 0.5:5 1:5\n"
        "at 0 spawn gate downward_pass threshold=10\n"
        "at 0 spawn pos rel_position base=5\n"
    ))
    assert len(rec.events) == 1
    ev = rec.events[0]
    assert ev.kind == "downward_pass" and ev.speed == pytest.approx(20.0)
    assert rec.records[0].samples[2] == 10.0  # z=15 relative to base 5


def test_dynamic_mode_uses_previous_tick_force():
    rec = run(parse(
        "rate 1000\nduration 0.02\nplant dynamic\nintent 0:10\n"
        "at 0 spawn shelf monoforce base=0 size=40 force=0.5\n"
    ))
    # tick 0: plant steps with force 0 (nothing recorded yet), so no motion
    assert rec.records[0].v == 0.0
    # tick 1 feels tick 0's 0.5 N: a = F/m = 25 mm/s^2 -> v = 0.025 mm/s
    assert rec.records[1].v == pytest.approx(0.025, rel=1e-9)


def test_degenerate_range_surfaces_id_and_time():
    session = Session(parse("rate 1000\nduration 0.01\nintent 0:5\n"))
    session.registry.spawn_haptic("linear_ramp", base=0, size=0,
                                  params={"force_base": 0.1, "force_range": 1.0})
    with pytest.raises(DegenerateRange) as err:
        session.run()
    assert err.value.instance_id == 1
    assert err.value.t == 0.0


def test_invalid_script_rejected_before_any_tick():
    script = parse("rate 1000\nduration 1\nat 0.5 kill ghost\n")
    with pytest.raises(ScriptError):
        Session(script)


# -- frames -------------------------------------------------------------------------

def test_frame_decimation_stride():
    session = make_session("rate 1000\nduration 0.1\nintent 0:5\n")
    assert session.frame_stride == 17  # round(1000 / 60)
    rec = session.run()
    assert len(rec.frames) == math.ceil(100 / 17)
    assert rec.frames[1].t == pytest.approx(17 / 1000.0)


def test_frames_reflect_scene_at_their_tick():
    rec = run(parse(
        "rate 100\nduration 1\nintent 0:25 0.2:25 0.8:13 1:13\n"
        "at 0 spawn wave force_wave base=12 size=8 freq=20 amp=0.2\n"
        "at 0 spawn spring linear_ramp base=0 size=14 force_base=0.7 "
        "force_range=-0.7\n"
    ))
    first, last = rec.frames[0], rec.frames[-1]
    assert [s.lit for s in first.signs] == [False, False]
    assert [s.lit for s in last.signs] == [True, True]
    assert [(s.z0, s.z1) for s in last.segments] == [(0, 12), (12, 14), (14, 20)]


# -- export -------------------------------------------------------------------------

def test_csv_header_and_line_count():
    rec = run(parse(
        "rate 1000\nduration 2\nintent 0:5\n"
        "at 0 spawn a monoforce base=0 size=10 force=0.5\n"
        "at 0.5 spawn b dashpot base=0 size=10 damping=0.01\n"
    ))
    csv = recording_csv(rec)
    lines = csv.splitlines()
    assert lines[0] == "t_s,z_mm,v_mm_s,force_N,f_1_N,f_2_N"
    assert len(lines) == 2001


def test_csv_instance_columns_span_lifetime_only():
    rec = run(parse(
        "rate 1000\nduration 0.004\nintent 0:5\n"
        "at 0.001 spawn a monoforce base=0 size=10 force=0.5\n"
        "at 0.003 kill a\n"
    ))
    lines = recording_csv(rec).splitlines()
    assert lines[1].endswith(",0,")          # t=0: not yet live
    assert lines[2].endswith(",0.5,0.5")     # t=0.001: live
    assert lines[4].endswith(",0,")          # t=0.003: killed


def test_csv_numbers_are_9_significant_digits():
    rec = run(parse("rate 1000\nduration 0.002\nintent 0:7.123456789123\n"))
    lines = recording_csv(rec).splitlines()
    assert lines[1].split(",")[1] == "7.12345679"


def test_events_csv_format():
    rec = run(parse(
        "rate 1000\nduration 1\nintent 0:15 0.5:5 1:5\n"
        "at 0 spawn gate downward_pass threshold=10\n"
    ))
    lines = events_csv(rec).splitlines()
    assert lines[0] == "t_s,dof_id,kind,speed_mm_s"
    assert len(lines) == 2
    t, dof_id, kind, speed = lines[1].split(",")
    assert kind == "downward_pass" and dof_id == "1"
    assert float(speed) == pytest.approx(20.0)


def test_frames_json_parses_and_is_schema_clean():
    rec = run(parse(
        "rate 1000\nduration 0.1\nintent 0:5\n"
        "at 0 spawn a monoforce base=0 size=10 force=0.5\n"
    ))
    frames = json.loads(frames_json(rec))
    assert len(frames) == len(rec.frames)
    for frame in frames:
        assert set(frame) == {"t", "cursor_z", "total_force", "segments",
                              "signs"}
        for seg in frame["segments"]:
            assert seg["z0"] < seg["z1"]
            assert len(seg["color"]) == 4
            assert seg["contributors"]


def test_export_writes_files(tmp_path):
    rec = run(parse("rate 1000\nduration 0.01\nintent 0:5\n"))
    written = export(rec, tmp_path / "out")
    assert [p.name for p in written] == ["recording.csv", "events.csv",
                                         "frames.json"]
    for p in written:
        assert p.exists() and p.stat().st_size > 0


def test_deterministic_reruns_are_byte_identical():
    text = (
        "rate 1000\nduration 0.5\nintent 0:25 0.25:10 0.5:10\n"
        "at 0 spawn w force_wave base=5 size=10 freq=30 amp=0.3\n"
        "at 0.1 spawn d dashpot base=0 size=20 damping=0.002\n"
    )
    a, b = run(parse(text)), run(parse(text))
    assert recording_csv(a) == recording_csv(b)
    assert frames_json(a) == frames_json(b)
    assert events_csv(a) == events_csv(b)


def test_kinematic_trajectory_identical_with_and_without_primitives():
    intent = "intent 0:25 0.2:5 0.4:20 0.5:20\n"
    bare = run(parse("rate 1000\nduration 0.5\n" + intent))
    loaded = run(parse(
        "rate 1000\nduration 0.5\n" + intent +
        "at 0 spawn shelf monoforce base=0 size=40 force=0.9\n"
        "at 0 spawn drag dashpot base=0 size=40 damping=0.05\n"
    ))
    assert [r.z for r in bare.records] == [r.z for r in loaded.records]
    assert [r.v for r in bare.records] == [r.v for r in loaded.records]


def test_rate_below_default_stream_rate_streams_every_tick():
    script = parse("duration 0.5\nintent 0:5\n")
    session = Session(script, config_from_script(script, rate=30.0))
    assert session.frame_stride == 1
    assert len(session.run().frames) == 15


def test_rate_halving_agrees_at_shared_timestamps():
    text = "duration 2\nintent 0:20 2:0\n"
    script = parse(text)
    rec_hi = run(parse(text), config_from_script(script, rate=1000.0))
    rec_lo = run(parse(text), config_from_script(script, rate=500.0))
    for k, lo in enumerate(rec_lo.records):
        hi = rec_hi.records[2 * k]
        assert hi.t == lo.t
        assert abs(hi.z - lo.z) <= 1e-6


# -- live commands ------------------------------------------------------------------

def collect_replies(session, payloads):
    replies = []
    for p in payloads:
        session.submit(p, replies.append)
    session.tick()
    return replies


def test_live_spawn_set_kill_cycle():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    replies = collect_replies(session, [
        {"spawn": {"name": "m", "kind": "monoforce",
                   "base": 0, "size": 10, "force": 0.5}},
    ])
    assert replies == [{"type": "ok", "op": "spawn", "name": "m", "id": 1}]
    assert session.registry.haptics[1].params["force"] == 0.5

    replies = collect_replies(session, [{"set": {"name": "m", "force": 0.8}},
                                        {"kill": "m"}])
    assert [r["type"] for r in replies] == ["ok", "ok"]
    assert session.registry.haptics == {}


def test_live_capacity_rejection_leaves_scene_unchanged():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    for _ in range(160):
        session.registry.spawn_haptic("monoforce", base=0, size=1,
                                      params={"force": 0.0})
    before = dict(session.registry.haptics)
    replies = collect_replies(session, [
        {"spawn": {"name": "extra", "kind": "monoforce",
                   "base": 0, "size": 1, "force": 0.0}},
    ])
    assert replies[0]["type"] == "error"
    assert replies[0]["code"] == "CapacityExceeded"
    assert session.registry.haptics == before
    assert "extra" not in session.names


def test_live_malformed_commands_answered_not_fatal():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    replies = collect_replies(session, [
        {"bogus": 1},
        {"spawn": {"kind": "monoforce"}},   # missing name
        {"set_intent": float("nan")},
        "not even a dict",
    ])
    assert all(r["type"] == "error" for r in replies)
    session.tick()  # still ticking


def test_live_intent_steers_kinematic_plant():
    session = Session(parse("rate 1000\nduration 1\nintent 0:20\n"))
    session.tick()
    assert session.state.z == 20.0
    session.submit({"set_intent": 5.0})
    session.tick()
    assert session.state.z == 5.0


def test_live_load_script_rebases_times():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    for _ in range(10):
        session.tick()
    replies = []
    session.submit({"load_script":
                    "at 0.002 spawn m monoforce base=0 size=10 force=0.5\n"},
                   replies.append)
    session.tick()
    assert replies[0]["type"] == "ok"
    assert session.registry.haptics == {}
    session.tick()  # t = 0.011
    session.tick()  # t = 0.012 -> offset 0.010 + 0.002
    assert 1 in session.registry.haptics


# -- raw channel --------------------------------------------------------------------

def test_raw_channel_absent_subscriber_is_empty_scene():
    text = "rate 1000\nduration 0.1\nintent 0:20 0.05:5 0.1:5\n"
    plain = run(parse(text))
    with_channel = Session(parse(text))
    with_channel.open_raw_channel()  # opened but never written to
    rec = with_channel.run()
    assert [r.total_force for r in rec.records] == \
        [r.total_force for r in plain.records]
    assert [r.z for r in rec.records] == [r.z for r in plain.records]


def test_raw_channel_hidden_instance_stays_out_of_frames():
    session = Session(parse("rate 1000\nduration 0.01\nintent 0:5\n"))
    session.open_raw_channel(callback=lambda z, v, t: 0.3)
    rec = session.run()
    assert rec.frames[0].signs == ()
    assert rec.frames[0].segments == ()


def test_raw_constant_command_matches_native_monoforce_after_tick_1():
    text = "rate 1000\nduration 0.05\nintent 0:20 0.025:5 0.05:5\n"
    native = run(parse(
        "rate 1000\nduration 0.05\nintent 0:20 0.025:5 0.05:5\n"
        "at 0 spawn m monoforce base=0 size=40 force=0.3\n"
    ))
    session = Session(parse(text))
    session.open_raw_channel(callback=lambda z, v, t: 0.3)
    raw = session.run()
    for k in range(1, len(native.records)):
        assert raw.records[k].total_force == native.records[k].total_force
    assert raw.records[0].total_force == 0.0


def test_raw_dashpot_echo_matches_native_with_one_tick_lag():
    intent = "intent 0:20 0.1:4 0.18:12 0.25:6 0.3:6\n"
    native = run(parse(
        "rate 1000\nduration 0.3\n" + intent +
        "at 0 spawn d dashpot base=0 size=40 damping=0.001\n"
    ))
    session = Session(parse("rate 1000\nduration 0.3\n" + intent))
    session.open_raw_channel(callback=lambda z, v, t: -0.001 * v)
    raw = session.run()
    native_f = [r.total_force for r in native.records]
    raw_f = [r.total_force for r in raw.records]
    for k in range(len(native_f) - 1):
        assert raw_f[k + 1] == native_f[k]  # exactly one tick of lag


def test_raw_stale_commands_dropped_and_counted():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    ch = session.open_raw_channel()
    for _ in range(5):
        session.tick()
    ch._pending = (0, 0.7)  # stamped five ticks ago
    session.tick()
    assert ch.stale_dropped == 1
    assert session.registry.haptics[ch.instance_id].params["force"] == 0.0


def test_raw_channel_publishes_state():
    session = Session(parse("rate 1000\nduration 1\nintent 0:5\n"))
    ch = session.open_raw_channel()
    session.tick()
    z, v, t = ch.last_state
    assert (z, v, t) == (5.0, 0.0, 0.0)
