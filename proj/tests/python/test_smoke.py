import json
import math
import os
import subprocess

import numpy as np
import pytest

import deltapair as dp


def test_version():
    assert dp.__version__ == "0.1.0"


def test_single_pulse_point():
    train = dp.single_pulse_train((5.0, 0.0))
    bare = dp.density(train, 0.5, (0.0, 0.0), bare=True)
    assert bare == pytest.approx(1.8860947, rel=1e-7)
    value = dp.density(train, 0.5, (0.0, 0.0))
    assert value == pytest.approx(dp.DEFAULT_ALPHA / (4 * math.pi**2) * bare, rel=1e-14)
    assert value == pytest.approx(dp.density_single((5.0, 0.0), 0.5, (0.0, 0.0)), rel=1e-14)


def test_train_normalization():
    train = dp.PulseTrain([(1.0, (3.0, 0.0)), (-1.0, (-3.0, 0.0)), (1.0, (0.0, 0.0))])
    assert train.jumps == [(-1.0, (-3.0, 0.0)), (1.0, (3.0, 0.0))]
    assert train.potentials == [(0.0, 0.0), (-3.0, 0.0), (0.0, 0.0)]
    assert len(train) == 2


def test_closed_forms_match_master():
    rng = np.random.default_rng(4)
    for _ in range(200):
        xi, theta, u = rng.uniform(0.1, 10), rng.uniform(0, 2), rng.uniform(0.05, 0.95)
        q = tuple(rng.uniform(-10, 10, 2))
        for make, closed in [
            (dp.opposite_sign_train, dp.density_opposite),
            (dp.same_sign_train, dp.density_samesign),
            (dp.alternating_four_train, dp.density_fourpulse),
        ]:
            b = dp.breakdown(make(xi, theta), u, q)
            ref = closed(xi, theta, u, q)
            scale = b["prefactor"] * (abs(b["f_total"]) + sum(abs(d) for d in b["diagonal"]))
            assert abs(dp.density(make(xi, theta), u, q) - ref) <= 1e-11 * scale


def test_grid_peaks():
    train = dp.single_pulse_train((5.0, 0.0))
    g = dp.grid(train, 0.5, (-2.0, 7.0, 91), (-3.0, 3.0, 61), threads=2)
    assert g.shape == (91, 61)
    q1 = np.linspace(-2, 7, 91)
    i, j = np.unravel_index(np.argmax(g), g.shape)
    assert min(abs(q1[i]), abs(q1[i] - 5)) < 0.2
    serial = dp.grid(train, 0.5, (-2.0, 7.0, 91), (-3.0, 3.0, 61), threads=1)
    assert np.array_equal(g, serial)


def test_total_probability_scaling():
    small = dp.total_probability(dp.single_pulse_train((0.01, 0.0)))
    large = dp.total_probability(dp.single_pulse_train((0.02, 0.0)))
    assert small["converged"] and large["converged"]
    assert large["value"] / small["value"] == pytest.approx(4.0, rel=0.01)
    assert dp.total_probability(dp.PulseTrain([]))["value"] == 0.0


def test_config_round_trip_and_errors():
    text = dp.normalize_config('{"train":[{"x":0,"da":[5,0]}],"evaluation":{"u":0.5,"qperp":[0,0]}}')
    assert dp.normalize_config(text) == text
    cfg = json.loads(text)
    assert cfg["integration"]["rel_tol"] == 1e-8
    with pytest.raises(dp.ConfigError, match="0 < u < 1"):
        dp.normalize_config('{"evaluation":{"u":1.0}}')
    with pytest.raises(ValueError):
        dp.normalize_config('{"bogus":1}')


def test_run_in_memory():
    body, meta, ok = dp.run("density", '{"train":[{"x":0,"da":[5,0]}],"evaluation":{"u":0.5,"qperp":[0,0]}}')
    assert ok
    header, row = body.strip().split("\n")
    assert header == "u,q1,q2,density"
    assert json.loads(meta)["engine"]["name"] == "deltapair"


@pytest.mark.skipif("DELTAPAIR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_grid_csv(tmp_path):
    cfg = tmp_path / "single.json"
    cfg.write_text(
        json.dumps(
            {
                "train": [{"x": 0, "da": [5, 0]}],
                "evaluation": {
                    "u": 0.5,
                    "grid": {"q1": {"min": -2, "max": 7, "n": 64}, "q2": {"min": -3, "max": 3, "n": 48}},
                },
            }
        )
    )
    out = tmp_path / "single.csv"
    cli = os.environ["DELTAPAIR_CLI"]
    subprocess.run([cli, "grid", "--config", str(cfg), "--out", str(out)], check=True)
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (64 * 48, 3)
    meta = json.loads((tmp_path / "single.csv.meta.json").read_text())
    assert meta["command"] == "grid"
    bad = subprocess.run([cli, "density", "--config", str(cfg)], capture_output=True, text=True)
    assert bad.returncode == 2
    assert json.loads(bad.stderr)["pointer"] == "/evaluation/qperp"
