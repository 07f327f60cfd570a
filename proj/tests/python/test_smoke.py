import json
import math

import pytest

import certquad

UNIT = certquad.Rectangle(0, 1, 0, 1)


def test_exponent_helpers():
    assert certquad.conjugate(2.0) == pytest.approx(2.0)
    assert math.isinf(certquad.conjugate(1))
    assert certquad.holder_coefficient("inf") == pytest.approx(0.5)
    assert certquad.holder_coefficient(1) == pytest.approx(1.0)
    with pytest.raises(certquad.ParseError):
        certquad.holder_coefficient("nope")


def test_registry_and_oracle():
    names = certquad.registry_names()
    assert len(names) == 8 and "poly22" in names
    f = certquad.make_integrand("poly22", UNIT)
    assert f.exact_integral == pytest.approx(1 / 9)
    with pytest.raises(certquad.RegistryError):
        certquad.make_integrand("nope", UNIT)


def test_worked_bounds():
    f = certquad.make_integrand("poly22", UNIT)
    t = certquad.apply_rule("trapezoid", f, UNIT, "inf")
    assert t["estimate"] == pytest.approx(0.25)
    assert t["bound"] == pytest.approx(0.75)
    m = certquad.apply_rule("midpoint", f, UNIT, "inf")
    assert m["bound"] == pytest.approx(0.5)
    assert abs(m["estimate"] - 1 / 9) <= m["bound"]


def test_python_integrand_with_partials():
    f = certquad.Integrand(
        lambda x, y: math.exp(x + y),
        fx=lambda x, y: math.exp(x + y),
        fy=lambda x, y: math.exp(x + y),
        fxy=lambda x, y: math.exp(x + y),
    )
    value, err = certquad.oracle_integrate(f, UNIT)
    assert value == pytest.approx((math.e - 1) ** 2, rel=1e-12)
    assert err >= 0
    for rule in ("trapezoid", "midpoint", "composite-trapezoid", "composite-midpoint"):
        for p in (1, 1.5, 2, "inf"):
            r = certquad.apply_rule(rule, f, UNIT, p, m=3, n=2, resolution=64)
            assert abs(r["estimate"] - value) <= r["bound"]
    assert certquad.parts_identity_residual(f, "midpoint", UNIT) < 1e-8


def test_weight_norms_and_uniform_bound():
    for q in (1, 1.5, 2, 3, "inf"):
        closed = certquad.phi_norm_closed("composite-midpoint", UNIT, q, m=2, n=3)
        numeric = certquad.phi_norm_numeric("composite-midpoint", UNIT, q, m=2, n=3, resolution=64)
        assert numeric == pytest.approx(closed, rel=1e-6)
    assert certquad.uniform_bound("trapezoid", 1, 1, UNIT) == pytest.approx(0.5625)
    assert certquad.uniform_bound("composite-trapezoid", 1, 0, UNIT, m=2, n=2) == pytest.approx(0.3125)


def test_minimizer():
    assert certquad.min_phi_norm_value(2) == pytest.approx(2 / 3)
    r = certquad.search_min(2, restarts=2)
    assert r["achieved_norm"] == pytest.approx(2 / 3, abs=1e-6)
    assert max(abs(c) for c in r["coefficients"]) <= 1e-4


def test_cli_round_trip():
    code, out, err = certquad.run_cli(["integrate", "--function", "poly22", "--format", "json"])
    assert code == 0, err
    report = json.loads(out)
    assert report["bound"]["total"] == pytest.approx(0.75)
    assert report["pass"] is True
    code, _, err = certquad.run_cli(["integrate", "--p", "nope"])
    assert code == 2
