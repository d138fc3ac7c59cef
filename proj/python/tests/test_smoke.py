import math

import numpy as np
import pytest

import waveguide_lab as wl


def test_k_values():
    assert wl.predicted_constant(1, 1, 2.0, 8.0, 4.0) == pytest.approx(0.5 + 0.5)
    with pytest.raises(NotImplementedError):
        wl.predicted_constant(1, 2, 1.0, 4.0, 2.0)


def test_transform_round_trip_and_plancherel():
    g = wl.Geometry(1, 1, 2.0, 4.0, [16, 8])
    rng = np.random.default_rng(0)
    u = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    F = wl.forward_transform(g, u)
    assert F.shape == (16, 8)
    back = wl.inverse_transform(g, F)
    assert np.max(np.abs(back - u)) < 1e-12
    with pytest.raises(ValueError):
        wl.forward_transform(g, u.ravel()[:10])


def test_propagate_is_phase():
    g = wl.Geometry(0, 1, 1.0, 1.0, [32])
    F = np.zeros(32, complex)
    F[3] = 1.0
    xi = wl.frequency_grid(g)[0]
    out = wl.propagate(g, F, 0.1)
    assert abs(out[3] - np.exp(-4j * math.pi**2 * xi[3] ** 2 * 0.1)) < 1e-14


def test_counting():
    assert wl.slice_length(1.0, 1.0) == pytest.approx(1.035276, abs=1e-6)
    assert wl.measure(4, 16, 2, [16, 0], 0.0) == 0.0
    sup = wl.measure_sup(1, 4, 4, 100, 3)
    assert sup["sup"] > 0 and sup["evaluated"] > 100


def test_sweep_and_refusal():
    cfg = {
        "experiment": "bilinear-sweep",
        "grid": {"lambda": [1], "N1": [2, 4], "N2": [1], "T": [0.25]},
        "draws": 1,
        "quadrature": {"steps": 32},
        "seed": 3,
    }
    t = wl.run_experiment(cfg)
    assert t["header"][12] == "ratio"
    assert len(t["rows"]) == 2 and t["failed_rows"] == 0
    assert t == wl.run_experiment(cfg, workers=2)
    cfg["resources"] = {"max_cost": 1.0}
    with pytest.raises(wl.ResourceRefusal) as info:
        wl.run_experiment(cfg)
    assert info.value.estimate == pytest.approx(wl.estimate_cost(cfg))
    with pytest.raises(wl.ConfigError):
        wl.run_experiment({"experiment": "nope"})


def test_imethod_and_extremizer():
    assert wl.i_multiplier_profile(0.5, 0.7) == 1.0
    p = wl.increment_point(2, 0.7, 0.4, dt_coefficient=0.01, horizon=0.05)
    assert p["increment"] > 0
    r = wl.lower_bound("torus-1d", 2.0, 8.0, 1.0)
    assert r["ratio"] > 0 and not r["degenerate"]
