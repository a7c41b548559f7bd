import math

import pytest

import saari


def test_config_measure_equal_masses():
    # equilateral shape, inverse-square force
    assert saari.config_measure((1, 1, 1), 2.0, 1j) == pytest.approx(3.0, rel=1e-12)
    # alpha = -2 collapses to the mass sum everywhere
    assert saari.config_measure((1, 2, 3), -2.0, 0.3 + 0.8j) == pytest.approx(6.0, rel=1e-12)


def test_central_configs():
    configs = saari.central_configs((1, 2, 3), 1.0)
    assert len(configs) == 5
    assert sum(c["type"] == "Lagrange" for c in configs) == 2
    assert all(c["grad_norm"] < 1e-10 for c in configs)


def test_contour_scan():
    scan = saari.contour_scan((1, 1, 1), 2.0, 3.5, 0.05 + 1.1j)
    assert scan["closed"]
    assert scan["F_spread"] > 1e-6
    assert all(abs(mu - 3.5) < 1e-10 for mu in scan["mu"])


def test_integrate_conserves():
    mu = saari.config_measure((1, 1, 1), 1.0, 1j)
    traj = saari.integrate(
        (1, 1, 1),
        1.0,
        {"r": 1.0, "eta": 1j, "phidot": math.sqrt(mu)},
        (0.0, 2.0),
        tol=1e-12,
    )
    assert max(traj["E"]) - min(traj["E"]) < 1e-9
    assert max(traj["mu"]) - min(traj["mu"]) < 1e-9


def test_verify_reports():
    strong = saari.verify_strong((1, 1, 1), 9.0, 0.0, 1.0)
    assert strong["pass"]
    rho2 = [c for c in strong["checks"] if c["quantity"] == "F_rho2"]
    assert rho2 and rho2[0]["found"][0] == pytest.approx(-2.0 / 9.0, rel=1e-9)

    newton = saari.verify_newton((1, 2, 3), 40.0, 1.0, 1.0)
    assert newton["pass"]


def test_branch_series():
    s1, s2 = saari.branch_strong((1, 1, 1), 9.0, 1)
    assert s1[0] == pytest.approx(-1.0)
    assert s2[-1] == pytest.approx(9.0)


def test_config_error():
    with pytest.raises(ValueError):
        saari.central_configs((1, -1, 1), 1.0)
