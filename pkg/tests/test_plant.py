import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zhaptics import (Constant, FingertipState, InvalidParam, PlantConfig,
                      Ramp, Sine, Waypoints, step_dynamic, step_kinematic)

DT = 0.001


def test_waypoint_interpolation_midpoint():
    traj = Waypoints([(0.0, 20.0), (1.0, 0.0)])
    s = step_kinematic(traj, 0.5, DT)
    assert s.z == 10.0
    assert s.v == pytest.approx(-20.0, rel=1e-9)


def test_holds_beyond_last_waypoint():
    traj = Waypoints([(0.0, 20.0), (1.0, 0.0)])
    s = step_kinematic(traj, 2.0, DT)
    assert s.z == 0.0 and s.v == 0.0


def test_holds_before_first_waypoint():
    traj = Waypoints([(0.5, 20.0), (1.0, 0.0)])
    s = step_kinematic(traj, 0.0, DT)
    assert s.z == 20.0 and s.v == 0.0


def test_constant_generator_zero_velocity():
    traj = Constant(7.0)
    for k in range(5):
        s = step_kinematic(traj, k * DT, DT)
        assert s.z == 7.0 and s.v == 0.0


def test_ramp_and_sine_generators():
    ramp = Ramp(0.0, 10.0, 2.0)
    assert ramp.value(1.0) == 5.0
    assert ramp.value(5.0) == 10.0
    sine = Sine(center=10.0, amplitude=2.0, freq_hz=1.0)
    assert sine.value(0.25) == pytest.approx(12.0)


def test_waypoints_must_increase():
    with pytest.raises(InvalidParam):
        Waypoints([(0.0, 1.0), (0.0, 2.0)])
    with pytest.raises(InvalidParam):
        Waypoints([])


def test_kinematic_clamps_to_travel():
    cfg = PlantConfig()
    traj = Waypoints([(0.0, 50.0), (1.0, -10.0)])
    for k in range(0, 1001, 50):
        s = step_kinematic(traj, k * DT, DT, cfg)
        assert cfg.z_min <= s.z <= cfg.z_max


def test_dynamic_equilibrium_is_a_fixed_point():
    cfg = PlantConfig(mode="dynamic")
    traj = Constant(10.0)
    s = FingertipState(z=10.0, v=0.0, t=0.0)
    s2 = step_dynamic(s, 0.0, traj, DT, DT, cfg)
    assert s2.z == 10.0 and s2.v == 0.0


def test_constant_force_offsets_by_f_over_kp():
    # closed-form PD equilibrium: kp * (z_t - z) + F = 0  =>  z = z_t + F / kp
    cfg = PlantConfig(mode="dynamic")
    force = 0.25
    expected = 10.0 + force / cfg.kp
    traj = Constant(10.0)
    s = FingertipState(z=10.0, v=0.0, t=0.0)
    for k in range(8000):  # several critical-damping time constants
        s = step_dynamic(s, force, traj, k * DT, DT, cfg)
    assert s.z == pytest.approx(expected, abs=1e-6)


def test_descent_into_ramp_spring_settles_at_fixed_point():
    # spring law f(z) = fb + fr * z / size on [0, size]; PD target below it.
    # fixed point solves kp * (z_t - z) + f(z) = 0
    cfg = PlantConfig(mode="dynamic")
    fb, fr, size = 0.7, -0.7, 14.0
    z_target = 5.0

    def spring(z):
        return fb + fr * (z / size) if 0.0 <= z <= size else 0.0

    expected = (cfg.kp * z_target + fb) / (cfg.kp - fr / size)
    assert expected == pytest.approx(3.2 / 0.55)  # frozen hand evaluation

    traj = Constant(z_target)
    s = FingertipState(z=20.0, v=0.0, t=0.0)
    engine_force = 0.0
    for k in range(4000):
        s = step_dynamic(s, engine_force, traj, k * DT, DT, cfg)
        engine_force = spring(s.z)  # next tick uses this tick's force
    assert s.z == pytest.approx(expected, abs=1e-4)
    assert abs(s.v) < 1e-6


def test_travel_stops_clamp_and_zero_velocity():
    cfg = PlantConfig(mode="dynamic", z_min=0.0, z_max=40.0)
    traj = Constant(0.0)
    s = FingertipState(z=1.0, v=0.0, t=0.0)
    for k in range(2000):
        s = step_dynamic(s, -5.0, traj, k * DT, DT, cfg)  # strong pull down
        assert cfg.z_min <= s.z <= cfg.z_max
    assert s.z == cfg.z_min and s.v == 0.0


def test_kinematic_ignores_engine_force_entirely():
    traj = Waypoints([(0.0, 20.0), (1.0, 5.0)])
    a = [step_kinematic(traj, k * DT, DT) for k in range(1000)]
    b = [step_kinematic(traj, k * DT, DT) for k in range(1000)]
    assert a == b  # no force argument exists; bit-identical replay


@settings(max_examples=20, deadline=None)
@given(
    mass=st.floats(0.005, 0.05),
    kp=st.floats(0.05, 2.0),
    extra=st.floats(0.0, 1.0),
    z0=st.floats(5.0, 35.0),
)
def test_damped_gains_converge_to_target(mass, kp, extra, z0):
    # critically damped or over-damped: kd^2 >= 4 * mass * kp
    kd = math.sqrt(4.0 * mass * kp) * (1.0 + extra)
    cfg = PlantConfig(mode="dynamic", mass=mass, kp=kp, kd=kd)
    # slowest pole of m*s^2 + kd*s + kp sets the settling horizon
    disc = max(0.0, kd * kd - 4.0 * mass * kp)
    slow = (kd - math.sqrt(disc)) / (2.0 * mass)
    n = min(int(25.0 / slow / DT), 120_000)
    traj = Constant(20.0)
    s = FingertipState(z=z0, v=0.0, t=0.0)
    for k in range(n):
        s = step_dynamic(s, 0.0, traj, k * DT, DT, cfg)
    assert abs(s.z - 20.0) < 1e-3
