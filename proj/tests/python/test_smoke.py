import math

import numpy as np
import pytest

import afw


def test_lmo_and_multipliers():
    g = np.array([3.0, 1.0, 2.0])
    assert afw.lmo(g) == 1
    lam = afw.multipliers(np.array([1.0, 0.0, 0.0]), g)
    np.testing.assert_allclose(lam, [0.0, -2.0, -1.0])
    assert afw.fw_gap(lam) == 2.0


def test_linear_run_identifies():
    f = afw.linear(np.array([1.0, 2.0, 3.0]))
    out = afw.run_afw(f, np.full(3, 1 / 3), reference=[np.array([1.0, 0.0, 0.0])])
    assert out["identification"] == 1
    assert out["active_set"] == [1, 2]
    assert math.isclose(out["r_star"], 1 / 3)
    np.testing.assert_array_equal(out["x"], [1.0, 0.0, 0.0])


def test_quadratic_run_converges():
    f = afw.quadratic(np.diag([2.0, 1.0, 4.0]), np.array([-2.0, 1.0, 1.0]))
    out = afw.run_afw(f, np.array([0.0, 0.0, 1.0]), stepsize="linesearch", gap_tol=1e-12,
                      reference=[np.array([1.0, 0.0, 0.0])])
    assert out["identification"] is not None
    assert out["gap_final"] <= 1e-12
    assert out["f_final"] == pytest.approx(-1.0)
    assert set(out["step_case"]) <= {1, 2, 3}


def test_bounds():
    assert afw.strongly_convex_bound(1.0, 1.0, 0.5, 0.5, 2)["predicted"] == 5
    assert afw.local_basin_bound(1.0, 0.0, 1.0, 1.0, 2)["predicted"] == 11
    assert afw.nonconvex_rate_bound(1.0, 1.0, 0.5, 8) == 1.0
    assert afw.active_set_radius(2.0, 1.0) == 0.5


def test_polytope():
    atoms = np.array([[1.0, 1.0, -1.0, -1.0], [1.0, -1.0, 1.0, -1.0]])
    f = afw.quadratic(np.eye(2), np.array([-2.0, -0.3]))
    out = afw.run_afw_polytope(f, atoms, y_star=np.array([1.0, 0.3]), gap_tol=1e-12, max_iters=100000)
    assert out["face"] == [0, 1]
    assert out["identification"] is not None
    np.testing.assert_allclose(out["y"], [1.0, 0.3], atol=1e-5)


def test_config_roundtrip():
    text = "problem = linear\nc = [1, 2, 3]\nreference = [[1, 0, 0]]\n"
    csv1, ok = afw.run_config(text)
    csv2, _ = afw.run_config(text)
    assert ok
    assert csv1 == csv2
    assert csv1.startswith("# schema=afw-trace-v1\n")
    with pytest.raises(afw.ConfigError):
        afw.run_config("problem = linear\n")


def test_suite_names():
    assert "sc-complexity" in afw.suite_names()
    checks = afw.run_suite("sc-complexity", 42)
    assert all(checks.values())
