"""Smoke tests for the python bindings."""

import json
import math
import random

import pytest

import phaserank as pr

LAMBDA = 0.3275

SMOKE_CONFIG = {
    "formation": [
        {"drone": "d0", "tag": "t0", "offset": [0.0, 1.5, 1.0]},
        {"drone": "d1", "tag": "t1", "offset": [0.3, 1.8, 1.3]},
    ],
    "speed": "low",
    "noise": {"phase_sigma": 0.0, "read_drop_prob": 0.0},
    "trials": 2,
    "seed": 13,
}


def test_ideal_phase():
    assert pr.ideal_phase(0.0, LAMBDA) == 0.0
    assert pr.ideal_phase(LAMBDA / 2.0, LAMBDA) == 0.0
    assert pr.ideal_phase(LAMBDA / 8.0, LAMBDA) == pytest.approx(math.pi / 2.0, abs=1e-15)
    assert pr.ideal_phase(1.5, LAMBDA, 0.7) == pytest.approx(1.7072281790135215, rel=1e-13)
    with pytest.raises(ValueError):
        pr.ideal_phase(1.0, -1.0)


def test_analytic_phase_rate():
    assert pr.analytic_phase_rate(-1.0, 0.5, 0.15, 0.0, LAMBDA) == pytest.approx(
        -5.147955833434425, rel=1e-13
    )
    assert pr.analytic_phase_rate(-1.0, 0.5, 0.0, 3.0, LAMBDA) == 0.0


def test_splice():
    spliced = pr.splice([0.1, 6.2])
    assert spliced[0] == 0.1
    assert spliced[1] == pytest.approx(6.2 - 2.0 * math.pi)
    # Wrap-free output: adjacent steps bounded by pi.
    rng = random.Random(4)
    raw = [pr.wrap_two_pi(0.05 * i + rng.gauss(0.0, 0.1)) for i in range(400)]
    out = pr.splice(raw)
    assert all(abs(b - a) <= math.pi + 1e-12 for a, b in zip(out, out[1:]))


def test_filter_and_trough():
    rng = random.Random(7)
    clean = [0.002 * (i - 150) ** 2 / 150.0 for i in range(301)]
    noisy = [v + rng.gauss(0.0, 0.05) for v in clean]
    smooth = pr.savitzky_golay(noisy, window=21, polyorder=3)
    index, value, boundary, tied = pr.find_trough_lowest(smooth, guard=5)
    assert index == pr.brute_force_min(smooth)
    assert abs(index - 150) < 25
    assert not boundary
    assert value < 0.3


def test_detect_rotation_events():
    values = [0.0] * 60 + [2.5] * 60
    ranges = pr.detect_rotation_events(values, step_threshold=1.0, sustain=9)
    assert len(ranges) == 1
    begin, end = ranges[0]
    assert begin <= 60 < end
    assert pr.detect_rotation_events([0.0] * 120, 1.0, 9) == []


def test_simulate_locate_roundtrip():
    sweeps = pr.simulate_sweeps(json.dumps(SMOKE_CONFIG))
    assert set(sweeps) == {"x", "y", "z"}
    report = json.loads(pr.locate(sweeps["x"], sweeps["y"], sweeps["z"]))
    assert report["partial"] is False
    # d1 leads on every axis in this formation.
    assert report["ranks"]["d1"] == {"x": 0, "y": 0, "z": 0}
    assert report["ranks"]["d0"] == {"x": 1, "y": 1, "z": 1}


def test_run_experiment_deterministic():
    out_a = pr.run_experiment(json.dumps(SMOKE_CONFIG))
    out_b = pr.run_experiment(json.dumps(SMOKE_CONFIG))
    assert out_a == out_b
    point = json.loads(out_a)["points"][0]
    assert point["pairwise_mean"]["mean"] == 1.0
    assert point["geometry"]["mean"] == 1.0
    with pytest.raises(ValueError):
        pr.run_experiment("{}")
