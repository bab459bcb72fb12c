import math

import pytest

import qnls


@pytest.fixture(scope="module")
def grid():
    return qnls.Grid(qnls.GridSpec(dim=3, r_max=50.0, n_nodes=2000, grading=1.003))


def test_sobolev_matches_closed_form():
    closed = math.pi * 3 * (math.gamma(1.5) / math.gamma(3.0)) ** (2 / 3)
    assert qnls.sobolev_constant(3) == pytest.approx(closed, rel=1e-10)


def test_theta_outside_window_is_rejected():
    with pytest.raises(ValueError, match="theta"):
        qnls.ProblemParams(dim=3, theta=3.5)


def test_thresholds_have_positive_c0():
    t = qnls.thresholds(qnls.ProblemParams(dim=3, q=2.5, tau=1.0))
    assert t["c0"] == pytest.approx(2.253373, rel=1e-5)
    assert t["rho0"] == pytest.approx(2.143850, rel=1e-5)


def test_dilation_preserves_mass(grid):
    u = qnls.RadialField.from_function(grid, lambda r: math.exp(-r * r / 4))
    m = qnls.mass(u)
    assert qnls.mass(qnls.dilate(u, 2.0)) == pytest.approx(m, rel=1e-6)


def test_gn_ratio_at_extremal_is_one(grid):
    c2 = qnls.gn_constant_quasi(3.0, 3)
    q = qnls.gn_extremal_profile(3.0, 3, grid)
    root = qnls.RadialField(grid, [math.sqrt(max(v, 0.0)) for v in q.values])
    assert qnls.gn_ratio(root, 3.0, c2) > 0.99


def test_scalar_path_max():
    assert qnls.scalar_path_max(3) == pytest.approx(1 / 6, rel=1e-9)


def test_local_minimize_and_verify():
    params = qnls.ProblemParams(dim=3, q=2.5, tau=1.0, mu=1e-3)
    params.mass = 0.5 * qnls.thresholds(params)["c0"]
    g = qnls.Grid(qnls.GridSpec(dim=3, r_max=50.0, n_nodes=2000, grading=1.003))
    report = qnls.local_minimize(params, g)
    assert report["status"] == "Converged"
    assert report["level"] < 0
    verdicts = {v["check"]: v["verdict"] for v in qnls.verify(report)}
    assert all(v == "pass" for v in verdicts.values()), verdicts


def test_gaussian_tail_is_super_polynomial(grid):
    u = qnls.RadialField.from_function(grid, lambda r: math.exp(-r * r))
    rec = qnls.linf_decay(u)
    assert rec["verdict"] == "pass"
