import math
import os

import pytest

import magineq

DATA = os.environ.get("MAGINEQ_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def test_version():
    assert isinstance(magineq.__version__, str)


def test_gn_constant():
    gn = magineq.compute_C_p(2, 3.0)
    assert gn.C_p == pytest.approx(3.596105845385, rel=1e-8)
    assert gn.S_p == pytest.approx(magineq.compute_S_p(2, 3.0, gn.C_p))


def test_mu_bounds_ordered():
    params = magineq.ProblemParams.constant_field(2, 3.0, 1.0)
    gn = magineq.compute_C_p(2, 3.0)
    for alpha in (-0.9, 0.0, 4.0):
        lo = magineq.mu_interp(params, gn, alpha)
        lt = magineq.mu_LT(3.0, 1.0, alpha, gn.C_p)
        el = magineq.solve_mu_el(3.0, 1.0, alpha).value
        hi = magineq.mu_gauss(3.0, 1.0, alpha).quotient_value
        assert lo <= lt <= el <= hi


def test_xi_and_klt_case_iii():
    assert magineq.xi_constant_field(2.0, 0.0) == 2.0
    assert magineq.xi_constant_field(1.0, 0.5) >= magineq.xi_zero_field(2, 0.5)
    params = magineq.ProblemParams.constant_field(2, 3.0, 1.0)
    bound = magineq.klt_case_iii(params, 1.0, math.pi)
    assert bound.bound_value == pytest.approx(magineq.xi_constant_field(1.0, 1.0) - math.log(math.pi))


def test_potential_parse_and_norm():
    pot = magineq.PotentialGrid.parse("# d=2 tail=none\nr,phi\n0,-1\n1,-1\n1.0000000001,0\n3,0\n")
    assert magineq.lq_norm_negative_part(pot, 3.0) == pytest.approx(math.pi ** (1 / 3), rel=1e-8)


def test_run_cli_table():
    columns, rows, ok = magineq.run_cli_table("mu-curve", {"min": -0.5, "max": 2.0, "steps": 4})
    assert ok
    assert columns[:5] == ["alpha", "mu_interp", "mu_LT", "mu_EL", "mu_Gauss"]
    assert len(rows) == 4
    assert all(row[columns.index("order_ok")] for row in rows)
    csv = magineq.run_cli_csv("xi-curve", {"min": 0.1, "max": 1.0, "steps": 3})
    assert "gamma,xi_B,xi_0" in csv


def test_run_cli_klt():
    columns, rows, ok = magineq.run_cli_table(
        "klt", {"potential": os.path.join(DATA, "step_disk.csv"), "case": "i", "source": "lt"}
    )
    assert ok
    assert rows[0][columns.index("case")] == "i"


def test_exceptions():
    assert issubclass(magineq.DomainError, magineq.Error)
    assert issubclass(magineq.Error, RuntimeError)
    with pytest.raises(magineq.DomainError):
        magineq.solve_mu_el(3.0, 1.0, -1.0)
    with pytest.raises(magineq.UnsupportedParameterError):
        magineq.compute_C_p(4, 3.0)
    with pytest.raises(magineq.ParseError):
        magineq.PotentialGrid.parse("0,1\n1,2\n")
