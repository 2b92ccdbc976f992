import math

import numpy as np
import pytest

import gsod


def test_fixture_a_constants():
    k = gsod.constants("fixture-a", eps=0.01)
    assert k["A0"] == pytest.approx(1.25, rel=1e-14)
    assert k["A1"] == pytest.approx(0.65625, rel=1e-14)
    assert k["kappa"] == pytest.approx(-0.3125, rel=1e-14)
    assert k["F_R"] == pytest.approx(0.3125, rel=1e-14)
    assert k["c_limit"] == pytest.approx(105 / 64, rel=1e-14)


def test_fixture_b_takes_its_radius():
    k = gsod.constants("fixture-b")
    assert k["R"] == 1.0
    assert k["family"] == "degenerate"
    assert k["kappa"] == pytest.approx(-1 / 16)


def test_dirichlet_solution_is_zero_on_the_boundary():
    d = gsod.solve_dirichlet(eps=0.02, shape={2: 0.3})
    phi = d["phi"]
    assert phi.shape == (d["theta"].size, d["rho"].size)
    assert np.max(np.abs(phi[:, 0])) < 1e-20
    assert np.all(phi[:, 1:] < 0)


def test_solution_and_fields():
    s = gsod.solve(eps=0.01)
    assert s.G_sup <= 1e-9
    assert s.iterations <= 10
    assert s.c == pytest.approx(0.01**2 * 105 / 64, rel=1e-3)
    centre = s.sample(2.0, 0.0)
    assert centre["inside"]
    assert centre["omega"][1] == pytest.approx(-2.5, rel=1e-3)
    outside = s.sample(2.5, 0.0)
    assert not outside["inside"]
    assert outside["u"] == (0.0, 0.0, 0.0)
    assert outside["p"] == s.outside_pressure
    f = s.field(nr=33, nz=33)
    mask = f["inside"].astype(bool)
    assert mask.any() and not mask.all()
    assert np.all(f["u_r"][~mask] == 0.0)
    ch = s.checks(nr=33, nz=33)
    assert ch["streamline"] < 1e-12
    assert ch["min_swirl"] > 0


def test_errors_carry_a_kind():
    with pytest.raises(gsod.GsodError) as info:
        gsod.constants("fixture-a", R=1.0)
    assert info.value.kind == "InadmissibleR"
    with pytest.raises(gsod.GsodError):
        gsod.scorecard("fixture-a", eps=[0.04, 0.01])


def test_claim_slope():
    r = gsod.run_claim("CL4", "fixture-a")
    assert r["verdict"] == "pass"
    assert math.isclose(r["slope"], 2.0, abs_tol=0.3)
