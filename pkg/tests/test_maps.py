"""Normal forms and counterexample families: ellipsoid forms, ball three-point maps, factors."""

import numpy as np
import pytest

from geodisc.domains import Ball, Ellipsoid, minkowski_many
from geodisc.errors import (DegenerateInstanceError, InfeasibleDataError,
                            PreconditionError)
from geodisc.maps import (Ball3Params, EdigarianForm, as_mapspec,
                          ball3_equivalent_params, ball3_normal_form,
                          ball3_solve_params, ball3_verify_params,
                          ball_power_pair_map, chi_w, compose_with_blaschke,
                          divide_moebius_powers, edigarian_check,
                          edigarian_complete, edigarian_eval,
                          edigarian_normalize, multiply_moebius_powers,
                          power_pair_geodesic, power_pair_map,
                          semilinear_triple_map, squared_sum_triple_map)
from geodisc.cplane import BlaschkeProduct, blaschke_eval, moebius

from test_cplane import unit_circle


def random_edigarian(rng):
    n = int(rng.integers(1, 4))
    steps = int(rng.integers(1, 4))
    p = rng.uniform(0.5, 2.5, size=n)
    alpha = (rng.uniform(0.05, 0.7, size=(steps, n))
             * np.exp(2j * np.pi * rng.uniform(size=(steps, n))))
    a_raw = rng.uniform(0.3, 1.2, size=n) * np.exp(2j * np.pi * rng.uniform(size=n))
    r = rng.integers(0, 2, size=(steps, n))
    return edigarian_normalize(a_raw, p, alpha, r)


# ---------------------------------------------------------------------------
# Ellipsoid normal form
# ---------------------------------------------------------------------------

def test_edigarian_single_factor_is_moebius():
    # one component, one step: completion recovers alpha0 = alpha and the map
    # collapses to the Moebius factor itself
    form = edigarian_normalize((1.0,), (1.0,), ((0.5,),), ((1,),))
    assert form.alpha0 == pytest.approx((0.5,))
    assert abs(abs(form.a[0]) - 1.0) < 1e-12
    for lam in (0.2, -0.3 + 0.1j, 0.6j):
        got = complex(edigarian_eval(form, lam)[0])
        assert got == pytest.approx(form.a[0] * moebius(0.5, lam), abs=1e-12)


def test_edigarian_completion_identity_random():
    rng = np.random.default_rng(401)
    zeta = unit_circle(256)
    for trial in range(25):
        form = random_edigarian(rng)
        assert edigarian_check(form) < 1e-12, f"trial {trial}"
        vals = edigarian_eval(form, zeta)
        gauge = np.sum(np.abs(vals) ** (2 * np.asarray(form.p)[None, :]), axis=1)
        assert np.max(np.abs(gauge - 1.0)) < 1e-10, f"trial {trial}"
        # interior values stay in the closure (flat instances with no Moebius
        # factor are gauge-constant, so equality is admissible)
        inner = edigarian_eval(form, 0.5 * zeta[:32])
        gi = np.sum(np.abs(inner) ** (2 * np.asarray(form.p)[None, :]), axis=1)
        assert np.max(gi) <= 1.0 + 1e-12


def test_edigarian_complete_requires_on_scale_amplitudes():
    form = edigarian_normalize((0.7, 0.9), (1.0, 1.5), ((0.4, 0.2j),), ((1, 0),))
    doubled = tuple(2.0 * v for v in form.a)
    with pytest.raises(InfeasibleDataError):
        edigarian_complete(doubled, form.p, form.alpha, form.r)


def test_edigarian_degenerate_on_circle_root():
    with pytest.raises(DegenerateInstanceError):
        edigarian_normalize((1.0,), (1.0,), (((1 - 1e-10) + 0j,),), ((1,),))


def test_edigarian_rejects_bad_multiplicities():
    with pytest.raises(ValueError):
        EdigarianForm((1.0,), (1.0,), ((0.5,),), (0.5,), ((2,),))


def test_edigarian_json_round_trip():
    rng = np.random.default_rng(402)
    form = random_edigarian(rng)
    back = EdigarianForm.from_json(form.to_json())
    lam = np.array([0.1, -0.2 + 0.3j, 0.55])
    assert np.max(np.abs(edigarian_eval(back, lam) - edigarian_eval(form, lam))) < 1e-14


def test_edigarian_as_mapspec_matches_eval():
    rng = np.random.default_rng(403)
    form = random_edigarian(rng)
    spec = as_mapspec(form)
    lam = 0.3 - 0.25j
    assert np.max(np.abs(np.asarray(spec(lam)) - edigarian_eval(form, lam))) < 1e-12


# ---------------------------------------------------------------------------
# Three-point ball normal form
# ---------------------------------------------------------------------------

def test_ball3_forward_frozen_instance():
    alpha, beta, gamma = ball3_equivalent_params(np.sqrt(0.5), 0.5)
    assert alpha * alpha == pytest.approx(0.6, abs=1e-12)
    assert beta * beta == pytest.approx(0.4, abs=1e-12)
    assert complex(gamma) == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_ball3_solver_round_trip():
    for p, q in ((0.3, 0.7), (0.5, 0.5), (0.85, 0.2), (0.1, 0.9)):
        b, c = ball3_solve_params(p, q)
        assert 0 < b < 1
        alpha, beta, gamma = ball3_equivalent_params(b, c)
        assert beta * beta == pytest.approx(p, abs=1e-9)
        assert complex(gamma) == pytest.approx(q, abs=1e-9)
        assert ball3_verify_params(b, c, p, q) < 1e-9


def test_ball3_solver_rejects_out_of_range():
    with pytest.raises(ValueError):
        ball3_solve_params(1.5, 0.5)


def test_ball3_normal_form_values_and_boundary():
    nf = ball3_normal_form(Ball3Params(0.6, 0.25))
    got = np.asarray(nf(0.7))
    want = np.array([0.6 * 0.7, 0.8 * 0.7 * moebius(0.25, 0.7)])
    assert np.max(np.abs(got - want)) < 1e-13
    vals = nf.eval_many(unit_circle(128))
    assert np.max(np.abs(np.linalg.norm(vals, axis=1) - 1.0)) < 1e-12


def test_chi_identity_and_base_point():
    rng = np.random.default_rng(404)

    def ball_point(n):
        raw = rng.normal(size=n) + 1j * rng.normal(size=n)
        return rng.uniform(0.05, 0.85) * raw / np.linalg.norm(raw)

    for _ in range(100):
        n = int(rng.integers(1, 4))
        w = ball_point(n)
        z = ball_point(n)
        img = chi_w(w, z)
        lhs = 1 - np.sum(np.abs(img) ** 2)
        rhs = ((1 - np.sum(np.abs(w) ** 2)) * (1 - np.sum(np.abs(z) ** 2))
               / abs(1 - np.vdot(w, z)) ** 2)
        assert abs(lhs - rhs) < 1e-11
        assert np.max(np.abs(chi_w(w, w))) < 1e-12
        assert np.linalg.norm(img) < 1.0


# ---------------------------------------------------------------------------
# Counterexample families
# ---------------------------------------------------------------------------

def test_power_pair_values_and_boundary_behavior():
    f = power_pair_map(4, 0.5)
    assert np.asarray(f(0.5)) == pytest.approx(np.array([0.125, 0.0625]))
    assert f.meta["geodesic"] is False
    dom = Ellipsoid((0.5, 0.5))
    gauge = minkowski_many(dom, f.eval_many(unit_circle(128)))
    assert np.max(np.abs(gauge - 1.0)) < 1e-12

    g = power_pair_geodesic(3, 0.25)
    assert np.asarray(g(0.5)) == pytest.approx(np.array([0.0625, 0.1875]))
    assert g.meta["geodesic"] is True


def test_triple_family_values():
    s = squared_sum_triple_map(4, 0.3)
    assert s.meta["b"] == pytest.approx(1 - 4 * 0.3 ** 2)
    assert np.asarray(s(0.4)) == pytest.approx(np.array([0.12, 0.048, 0.04096]))
    t = semilinear_triple_map(5, 0.3)
    assert t.meta["b"] == pytest.approx(1 - 2 * 0.3 ** 2)
    assert t.meta["extremal_m"] == 5


def test_ball_power_pair_boundary():
    f = ball_power_pair_map(4, 0.5)
    vals = f.eval_many(unit_circle(64))
    assert np.max(np.abs(np.linalg.norm(vals, axis=1) - 1.0)) < 1e-12


def test_family_parameter_guards():
    with pytest.raises(ValueError):
        power_pair_map(2, 0.5)
    with pytest.raises(ValueError):
        power_pair_map(4, 1.5)
    with pytest.raises(ValueError):
        squared_sum_triple_map(3, 0.3)
    with pytest.raises(ValueError):
        semilinear_triple_map(4, 0.3)


# ---------------------------------------------------------------------------
# Factor manipulation
# ---------------------------------------------------------------------------

def test_divide_multiply_round_trip():
    dom = Ellipsoid((0.5, 0.5))
    f = power_pair_map(4, 0.5)
    h, tag = divide_moebius_powers(f, 0.0, (1, 1), dom)
    assert tag == "interior"
    assert np.asarray(h(0.3)) == pytest.approx(np.array([0.15, 0.045]))
    back = multiply_moebius_powers(h, 0.0, 1, (1, 1))
    for lam in (0.3, -0.2 + 0.4j):
        assert np.max(np.abs(np.asarray(back(lam)) - np.asarray(f(lam)))) < 1e-13


def test_divide_full_order_hits_boundary_tag():
    dom = Ellipsoid((0.5, 0.5))
    f = power_pair_map(4, 0.5)
    h, tag = divide_moebius_powers(f, 0.0, (2, 3), dom)
    assert tag == "boundary"
    assert np.asarray(h(0.0)) == pytest.approx(np.array([0.5, 0.5]))


def test_divide_rejects_insufficient_vanishing():
    dom = Ellipsoid((0.5, 0.5))
    f = power_pair_map(4, 0.5)
    with pytest.raises(PreconditionError):
        divide_moebius_powers(f, 0.0, (3, 3), dom)


def test_compose_with_blaschke_is_composition():
    f = power_pair_geodesic(3, 0.5)
    B = BlaschkeProduct(1.0, (0.3, -0.2j))
    g = compose_with_blaschke(f, B)
    assert g.meta["extremal_m"] == f.meta["extremal_m"] * 2
    for lam in (0.0, 0.4, -0.3 + 0.3j):
        want = np.asarray(f(complex(blaschke_eval(B, lam))))
        assert np.max(np.abs(np.asarray(g(lam)) - want)) < 1e-12
