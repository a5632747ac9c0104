"""Smoke tests for the pygnmln extension module."""
import json
import math

import numpy as np
import pytest

import pygnmln as g

R1 = g.ProblemParams(dim=1, s_low=0.5, s_high=1.0, p=5.0)


def test_param_algebra():
    e = g.gn_exponents(R1)
    assert e.exp_low + e.exp_high == pytest.approx(2.0, abs=1e-14)
    assert e.exp_mass == pytest.approx(3.0)
    c0 = g.critical_mass_from_constant(1.0, R1)
    assert g.constant_from_critical_mass(c0, R1) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(ValueError):
        g.ProblemParams(dim=1, s_low=0.5, s_high=1.0, p=3.0)


def test_field_numpy_round_trip():
    grid = g.make_grid(1, 128, 16.0)
    x = np.linspace(0, 1, 128)
    f = g.Field(grid, x)
    assert np.array_equal(f.values, x)
    with pytest.raises(ValueError):
        g.Field(grid, np.zeros(64))


def test_norms_match_numpy():
    grid = g.make_grid(1, 256, 16.0)
    u = g.random_smooth_field(grid, 7)
    v = u.values
    h = grid.spacing()
    assert g.mass(u) == pytest.approx(np.sum(v * v) * h, rel=1e-13)
    assert g.lp_norm_p(u, 5.0) == pytest.approx(np.sum(np.abs(v) ** 5) * h, rel=1e-13)
    k = np.fft.fftfreq(256) * np.pi * 256 / 16.0
    uh = np.fft.fft(v)
    semi = np.sum(np.abs(k) * np.abs(uh) ** 2) * h / 256
    assert g.seminorm_sq(u, 0.5) == pytest.approx(semi, rel=1e-12)


def test_petviashvili_ground_state():
    grid = g.make_grid(1, 256, 16.0)
    q = g.petviashvili_solve(R1, 1.0, g.canonical_init(grid, R1, 1.0))
    assert q.residual < 1e-10
    assert q.omega == 1.0
    # Nehari identity of the discrete fixed point
    r = q.report
    assert r.kinetic_high + r.kinetic_low + r.mass == pytest.approx(
        r.potential, rel=1e-12
    )
    with pytest.raises(RuntimeError):
        opts = g.SolverOptions()
        opts.max_iters = 2
        g.petviashvili_solve(R1, 1.0, g.canonical_init(grid, R1, 1.0), opts)


def test_critical_mass_and_certificate():
    grid = g.make_grid(1, 256, 24.0)
    r = g.critical_mass_search(R1, grid)
    assert r.omega_star > 0
    assert r.c0_routeA == pytest.approx(r.c0_formula, rel=1e-2)
    cert = json.loads(g.optimality_certificate_json(r, R1, n_samples=50, seed=3))
    assert cert["status"] in ("PASS", "FAIL")
    assert cert["gn_sample_violations"] == 0


def test_snapshot_round_trip(tmp_path):
    grid = g.make_grid(1, 64, 8.0)
    u = g.gaussian_field(grid, 1.0, 1.0)
    base = str(tmp_path / "snap")
    g.save_field_snapshot(base, u, R1)
    v, pp = g.load_field_snapshot(base + ".json")
    assert g.content_hash(v) == g.content_hash(u)
    assert pp.p == R1.p
