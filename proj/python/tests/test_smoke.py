import math

import pytest

import staggered_euler as se


def test_cases_listed():
    names = [c["name"] for c in se.builtin_cases()]
    assert names == ["sod", "strong", "one23", "severe", "smooth"]
    sod = se.builtin_cases()[0]
    assert sod["left"] == {"rho": 1.0, "u": 0.0, "p": 1.0}


def test_exact_riemann_sod():
    sol = se.exact_riemann((1.0, 0.0, 1.0), (0.125, 0.0, 0.1), 1.4, [-10.0, 10.0])
    assert sol["p_star"] == pytest.approx(0.30313, abs=1e-5)
    assert sol["u_star"] == pytest.approx(0.92745, abs=1e-5)
    assert sol["rho"] == [1.0, 0.125]


def test_basis_partition_of_unity():
    for lam in (0.0, 0.3, 1.0):
        assert sum(se.basis_eval(2, i, lam) for i in range(3)) == pytest.approx(1.0)
    assert se.bezier_value([1.0, 2.0, 3.0], 0.5) == pytest.approx(2.0)


def test_isentropic_initial_data():
    rho, u = se.isentropic_exact(0.25, 0.0)
    assert rho == pytest.approx(1.9)
    assert u == pytest.approx(0.0)


def test_run_sod():
    out = se.run_case({"case": "sod", "n_cells": 100, "blending": "proc2"})
    assert out["t"] == pytest.approx(0.16)
    assert out["l1"]["rho"] < 0.05
    assert out["identity_residue"] < 1e-12
    assert out["drift_momentum"] < 1e-12
    assert len(out["profile"]["x"]) == 1000
    assert out["summary"]["case"] == "sod"
    assert all(r > 0 for r in out["profile"]["rho"])


def test_bool_and_numeric_settings():
    out = se.run_case({"case": "smooth", "n_cells": 40, "correction": False, "t_final": 0.005})
    assert out["summary"]["correction"] == "off"
    assert math.isfinite(out["l1"]["rho"])


def test_bad_config_raises():
    with pytest.raises(ValueError):
        se.run_case({"colour": "red"})
    with pytest.raises(ValueError):
        se.run_case({"flux": "upwind"})


def test_strong_without_limiting_aborts():
    with pytest.raises(se.PositivityError):
        se.run_case({"case": "strong", "n_cells": 100})


def test_convergence_rows():
    rows = se.convergence_study({"case": "smooth", "r": 0, "equal_degree": False}, [20, 40])
    assert [r["n"] for r in rows] == [20, 40]
    assert rows[0]["order_rho"] is None
    assert rows[1]["l1_rho"] < rows[0]["l1_rho"]


def test_stability_rows():
    rows = se.stability_matrix(40, 0.005, 0.4)
    assert len(rows) == 9
    assert {r["flux"] for r in rows} == {"centered", "exact", "hllc"}
