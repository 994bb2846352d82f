import cmath
import math

import numpy as np
import pytest

import tswave


@pytest.fixture
def profile():
    return tswave.ShearProfile.exponential()


def test_airy_anchors():
    ai, aip, ai1, ai2 = tswave.airy(0)
    assert abs(ai1 + 1 / 3) < 1e-12
    assert abs(ai2 + aip) < 1e-12
    assert abs(ai - 0.355028053887817) < 1e-12


def test_airy_ratio_large_argument():
    z0 = cmath.rect(100.0, -5 * math.pi / 6)
    q = tswave.airy_ratio(z0)
    assert abs(q + cmath.sqrt(z0)) / abs(cmath.sqrt(z0)) <= 2 / 100


def test_profile_validation(profile):
    r = tswave.validate_profile(profile, 0.3)
    assert r["pass"]
    assert r["min_H"] == pytest.approx(0.5, rel=1e-12)


def test_params_and_reference_zero():
    prm = tswave.FlowParams(M=0.3, eps=1e-8, K=8)
    assert abs(tswave.f_ref(prm.c0, prm)) < 1e-12
    assert abs(1j * prm.n * prm.delta**3 - 1) < 1e-14


def test_invalid_mach_rejected():
    with pytest.raises(tswave.DomainError):
        tswave.FlowParams(M=1.2)


def test_dispersion_record(profile):
    r = tswave.solve_dispersion(tswave.FlowParams(eps=1e-8), profile)
    assert r["winding"] in (0, 1)
    assert r["min_boundary_modulus"] > 0
    assert r["samples"] >= 64


def test_approx_mode_satisfies_wall_condition(profile):
    prm = tswave.FlowParams(eps=1e-8)
    a = tswave.approx_mode(prm, profile, prm.c0, n=1024)
    assert abs(a["v"][0]) < 1e-12 * np.max(np.abs(a["v"]))
    assert a["norm_EvRe_H1w"] > 0


def test_exact_mode_closes(profile):
    prm = tswave.FlowParams(eps=1e-8)
    x = tswave.exact_mode(prm, profile, prm.c0, n=1024)
    assert abs(x["v"][0]) < 1e-14
    assert x["residual"] < 1e-6
    assert x["F"] == x["u"][0]
    assert np.all(x["ratios_sm"] < 0.5)


def test_resolvent_routes_agree(profile):
    prm = tswave.FlowParams(eps=1e-8)
    c = prm.c0
    Y = tswave.mode_grid(prm, profile, c, n=1024)
    fu = Y * np.exp(-Y) * (1 + 0.5j)
    fv = Y**2 * np.exp(-0.7 * Y) + 0j
    it = tswave.resolvent(prm, profile, c, Y, fu, fv)
    mono = tswave.resolvent(prm, profile, c, Y, fu, fv, monolithic=True)
    num = sum(np.linalg.norm(it[k] - mono[k]) ** 2 for k in ("rho", "u", "v"))
    den = sum(np.linalg.norm(mono[k]) ** 2 for k in ("rho", "u", "v"))
    assert math.sqrt(num / den) < 1e-6
    assert np.all(it["ratios"] < 0.5)
