"""Left-inverse certificates, slack inequalities and radial properness profiles."""

import json
import math

import numpy as np
import pytest

from geodisc.certify import (CERTIFIED, REFUTED, Certificate,
                             ball3_certificate, ball3_left_inverse,
                             ball_monomial_certificate,
                             ball_monomial_coefficients, certificate_from_json,
                             derivative_count_check, family_certificate_inputs,
                             family_domain, family_map,
                             monomial_curve_left_inverse,
                             monomial_left_inverse, power_pair_slack,
                             product_rule, properness_profile,
                             replay_certificate, semilinear_slack,
                             squared_sum_slack, verify_left_inverse)
from geodisc.cplane import BlaschkeProduct
from geodisc.domains import Ball, Ellipsoid, boundary_samples
from geodisc.errors import NotCommensurableError, PreconditionError
from geodisc.mapspec import MapSpec, MultiPoly, Polynomial, monomial_map

from test_cplane import unit_circle


def commensurable_amplitudes(p, m_vec):
    # boundary amplitudes with p_j |a_j|^(2 p_j) = c m_j and unit gauge sum
    c = 1.0 / sum(mj / pj for mj, pj in zip(m_vec, p))
    return tuple((c * mj / pj) ** (1.0 / (2 * pj)) for mj, pj in zip(m_vec, p))


# ---------------------------------------------------------------------------
# Monomial left inverses
# ---------------------------------------------------------------------------

def test_monomial_left_inverse_frozen_example():
    F, m_vec = monomial_left_inverse((0.5, 0.5), (0.5, 0.5))
    assert m_vec == (1, 1)
    terms = F.to_json()["terms"]
    assert terms == [[[4.0, 0.0], [1, 1]]]
    # composition with the monomial map is exactly lam^2
    for lam in (0.3, -0.2 + 0.4j):
        z = np.array([0.5 * lam, 0.5 * lam])
        assert complex(F(z[None, :])[0]) == pytest.approx(lam ** 2, abs=1e-14)


def test_monomial_left_inverse_recovers_exponents():
    rng = np.random.default_rng(501)
    for trial in range(30):
        n = int(rng.integers(2, 4))
        m_vec = tuple(int(v) for v in rng.integers(1, 5, size=n))
        g = math.gcd(*m_vec)
        m_vec = tuple(v // g for v in m_vec)
        p = tuple(rng.uniform(0.5, 2.0, size=n))
        a = commensurable_amplitudes(p, m_vec)
        F, got = monomial_left_inverse(p, a)
        assert got == m_vec, f"trial {trial}"


def test_monomial_left_inverse_boundary_sup():
    # sampled form of the supporting hyperplane inequality
    p = (1.0, 1.5)
    a = commensurable_amplitudes(p, (1, 2))
    F, _ = monomial_left_inverse(p, a)
    Z = boundary_samples(Ellipsoid(p), 100000, seed=11)
    assert float(np.max(np.abs(F(Z)))) <= 1.0 + 1e-9


def test_monomial_left_inverse_incommensurable():
    with pytest.raises(NotCommensurableError):
        monomial_left_inverse((0.5, 0.5), (1.0 / np.sqrt(2), 1 - 1.0 / np.sqrt(2)))


def test_monomial_curve_left_inverse_composes_to_power():
    p = (1.0, 1.0)
    powers = (1, 2)
    a = (0.6, 0.7)
    F = monomial_curve_left_inverse(p, a, powers)
    for lam in (0.4, -0.3 + 0.2j):
        z = np.array([a[0] * lam, a[1] * lam ** 2])
        assert complex(F(z[None, :])[0]) == pytest.approx(lam ** 2, abs=1e-12)


def test_monomial_curve_constraint_guard():
    with pytest.raises(PreconditionError):
        monomial_curve_left_inverse((0.5, 0.5), (0.6, 0.7), (1, 3))


# ---------------------------------------------------------------------------
# Ball certificates
# ---------------------------------------------------------------------------

def test_ball_monomial_coefficients_frozen():
    a, c, d = ball_monomial_coefficients(3, 0.5)
    assert a == pytest.approx(np.sqrt(0.75), abs=1e-15)
    assert d == pytest.approx(1.0, abs=1e-15)
    assert c == pytest.approx(4.0 / (3.0 * np.sqrt(3.0)), abs=1e-15)


def test_ball_monomial_identity_random():
    rng = np.random.default_rng(502)
    for _ in range(50):
        m = int(rng.integers(3, 9))
        b = rng.uniform(1e-3, 1.0 / (m - 1))
        a, c, d = ball_monomial_coefficients(m, b)
        assert abs(c * a ** m + d * b - 1.0) < 1e-14
        assert d <= 1.0 + 1e-12
    # sharpness: past the threshold the hyperplane coefficient exceeds one
    for m in (3, 4, 6):
        b = 1.0 / (m - 1) + 0.05
        _, _, d = ball_monomial_coefficients(m, b)
        assert d > 1.0


def test_ball_monomial_certificate_certifies():
    cert = ball_monomial_certificate(3, 0.5, seed=9)
    assert cert.verdict == CERTIFIED
    assert cert.residual_composition <= 1e-9
    assert cert.m == 4
    assert cert.sampled_bound is True


def test_ball3_certificate_certifies():
    cert = ball3_certificate(0.3, seed=9)
    assert cert.verdict == CERTIFIED
    assert cert.residual_composition <= 1e-9
    F = ball3_left_inverse(0.3)
    nf_terms = {tuple(mono): coeff for coeff, mono in
                ((complex(*c), tuple(e)) for c, e in F.to_json()["terms"])}
    aa = 0.3 * 0.3
    assert nf_terms[(2, 0)] == pytest.approx(1.0 / (2 - aa), abs=1e-14)
    assert nf_terms[(0, 1)] == pytest.approx(2 * np.sqrt(1 - aa) / (2 - aa), abs=1e-14)


# ---------------------------------------------------------------------------
# General verification and replay
# ---------------------------------------------------------------------------

def test_verify_left_inverse_refutes_oversized_functional():
    f, F, B, dom, m = family_certificate_inputs("power-pair-geodesic", 3, 0.5)
    bad = MultiPoly([(3.0, (1, 0)), (3.0, (0, 1))])
    cert = verify_left_inverse(f, bad, B, dom, m, seed=3)
    assert cert.verdict == REFUTED


def test_verify_left_inverse_degree_gate():
    # perfect composition but the claimed extremality order is too small:
    # a degree-2 product is not admissible for m = 2
    f, F, B, dom, _ = family_certificate_inputs("power-pair-geodesic", 3, 0.5)
    cert = verify_left_inverse(f, F, B, dom, 2, seed=3)
    assert cert.verdict != CERTIFIED
    # constant product is never an admissible witness either
    cert = verify_left_inverse(f, F, BlaschkeProduct(1.0, ()), dom, 3, seed=3)
    assert cert.verdict != CERTIFIED


def test_family_inputs_refuse_non_geodesic_families():
    with pytest.raises(PreconditionError):
        family_certificate_inputs("power-pair", 4, 0.5)
    with pytest.raises(PreconditionError):
        family_certificate_inputs("ball-power-pair", 4, 0.5)


def test_certificate_replays_bit_for_bit():
    cert = ball_monomial_certificate(4, 1.0 / 3.0, seed=21)
    blob = json.dumps(cert.to_json())
    replayed = replay_certificate(json.loads(blob))
    assert replayed.verdict == cert.verdict
    assert replayed.residual_composition == cert.residual_composition
    assert replayed.boundary_sup_estimate == cert.boundary_sup_estimate


def test_certificate_json_round_trip():
    cert = ball3_certificate(0.6, seed=13)
    back = certificate_from_json(cert.to_json())
    assert isinstance(back, Certificate)
    assert back.verdict == cert.verdict
    assert back.m == cert.m
    assert back.seed == cert.seed


# ---------------------------------------------------------------------------
# Slack inequalities and counting
# ---------------------------------------------------------------------------

def test_slack_frozen_values():
    assert power_pair_slack(0.5) == pytest.approx(-0.25, abs=1e-15)
    assert squared_sum_slack(0.25) == pytest.approx(-4.0 / 45.0, abs=1e-12)
    assert semilinear_slack(1.0, 1.0, 0.7) == pytest.approx(0.0, abs=1e-15)


def test_slack_signs_on_grids():
    for a in np.linspace(0.01, 0.99, 99):
        assert power_pair_slack(float(a)) < 0
    for a in np.linspace(0.005, 0.495, 99):
        assert squared_sum_slack(float(a)) < 0
    rng = np.random.default_rng(503)
    for _ in range(99):
        al, be = rng.uniform(0, 1 - 1e-6, size=2)
        c = rng.uniform(0.05, 0.95)
        assert semilinear_slack(float(al), float(be), float(c)) < 0


def test_product_rule():
    assert product_rule([False, True, False])
    assert not product_rule([False, False])
    with pytest.raises(ValueError):
        product_rule([])


def test_derivative_count_examples():
    a = 0.7
    line = MapSpec([Polynomial([0.0, a])])
    assert derivative_count_check(line, (0.0, 0.5)) == 2
    parab = MapSpec([Polynomial([0.0, 0.0, 1.0]), Polynomial([0.0])])
    assert derivative_count_check(parab, (0.0, 0.5)) == 1
    const = MapSpec([Polynomial([0.3])])
    assert derivative_count_check(const, (0.0, 0.5)) == 0


# ---------------------------------------------------------------------------
# Properness profiles
# ---------------------------------------------------------------------------

def test_profile_family_map_is_almost_proper():
    f = family_map("power-pair", 3, 0.5)
    prof = properness_profile(f, family_domain("power-pair"))
    assert prof.almost_proper
    assert prof.gamma_hat > 0
    assert prof.max_final_defect <= 1e-2
    csv = prof.to_csv()
    assert csv.splitlines()[0] == "zeta_re,zeta_im,r,defect"
    assert len(csv.splitlines()) == 1 + len(prof.rows)


def test_profile_flags_interior_constant():
    const = MapSpec([Polynomial([0.2]), Polynomial([0.1])])
    prof = properness_profile(const, Ellipsoid((0.5, 0.5)))
    assert not prof.almost_proper
    assert prof.max_final_defect > 1e-2
