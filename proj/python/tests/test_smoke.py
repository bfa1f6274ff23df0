import json
import math

import pytest

import heismin


def test_group_law():
    p, q = (1.0, 2.0, 3.0), (-0.5, 0.25, 1.0)
    x, y, z = heismin.group_mul(p, q)
    assert (x, y) == (0.5, 2.25)
    assert z == pytest.approx(3.0 + 1.0 + 2.0 * -0.5 - 1.0 * 0.25)
    assert heismin.group_mul(p, heismin.group_inv(p)) == pytest.approx((0.0, 0.0, 0.0))


def test_closed_forms_and_fit():
    s = heismin.General(0.3, 2.0)
    for x in (-1.0, 0.0, 2.5):
        assert abs(heismin.lienard_residual(s, x)) < 1e-10
    a, v = heismin.eval_alpha(s, 0.7)
    f = heismin.fit_solution(a, v, 0.7)
    assert heismin.family_name(f) == "General"
    assert f.c1 == pytest.approx(0.3, abs=1e-12)
    assert f.c2 == pytest.approx(2.0, abs=1e-12)
    assert heismin.conserved_quantity(a, v) == pytest.approx(8.0 / 3.0)
    with pytest.raises(heismin.NumericError):
        heismin.conserved_quantity(*heismin.eval_alpha(heismin.SpecialI(1.0), 0.5))


def test_rk4_matches_closed_form():
    s = heismin.SpecialI(1.0)
    a, v = heismin.eval_alpha(s, 0.0)
    rows = heismin.integrate_ivp(a, v, 0.0, 3.0)
    assert rows[-1][0] == 3.0
    assert max(abs(al - 1.0 / (x + 1.0)) for x, al, _ in rows) < 1e-6


def test_classify_and_graphs():
    assert heismin.classify("general", "0", "1") == "TypeI"
    assert heismin.pmge_residual("x*y + y^2", 0.3, -1.1) == 0.0
    comps = heismin.singular_set("x*y")
    assert [kind for kind, _ in comps] == ["curve"]
    assert all(abs(x) < 1e-10 for x, _ in comps[0][1])
    assert heismin.helicoid_alpha("-t", 0.5, 0.2) == pytest.approx(0.5 * -1 / (0.25 * -1 + 1))
    with pytest.raises(heismin.ExprSyntaxError):
        heismin.pmge_residual("2*^3", 0.0, 0.0)


def test_zeta_round_trip():
    for t, z1, z2 in heismin.zeta_round_trip("0.3*sin(theta)", "1 + 0.2*cos(theta)"):
        assert z1 == pytest.approx(0.3 * math.sin(t), abs=1e-6)
        assert z2 == pytest.approx(1 + 0.2 * math.cos(t), abs=1e-6)


def test_cli_entry_point():
    code, out, err = heismin.run_cli(["classify", "--alpha", "general", "--c1", "0", "--c2", "1"])
    assert code == 0 and err == ""
    assert json.loads(out)["type"] == "TypeI"
    assert heismin.run_cli(["classify", "--c1", "2*^3"])[0] == 3
    assert heismin.run_cli(["nope"])[0] == 1
