"""Gauge domains: Minkowski functionals, membership, boundary sampling, exponent class."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from geodisc.domains import (Ball, CustomGauge, Ellipsoid, EllipsoidSpec,
                             Polydisc, UnitDisc, boundary_samples,
                             convexity_check, domain_from_json,
                             membership_defect, minkowski_many,
                             minkowski_value, semilinear_gauge, sn_membership,
                             sn_witness_valid, squared_sum_gauge)


def random_point(rng, n, scale=1.0):
    return scale * (rng.normal(size=n) + 1j * rng.normal(size=n))


# ---------------------------------------------------------------------------
# Minkowski functional oracles
# ---------------------------------------------------------------------------

def test_minkowski_frozen_ellipsoid_value():
    # For E(1/2, 1) at (0.3, 0.4i) the gauge solves 0.3/t + 0.16/t^2 = 1,
    # hence t = (0.3 + sqrt(0.73)) / 2.
    dom = Ellipsoid((0.5, 1.0))
    got = minkowski_value(dom, np.array([0.3, 0.4j]))
    assert got == pytest.approx((0.3 + np.sqrt(0.73)) / 2, abs=1e-12)


def test_minkowski_frozen_weighted_value():
    # weight 2 on a single coordinate: |z / t^2| = 1 at t = sqrt(|z|)
    dom = Ellipsoid((1.0,), weights=(2,))
    assert minkowski_value(dom, np.array([0.25])) == pytest.approx(0.5, abs=1e-12)


def test_minkowski_ball_and_polydisc_closed_forms():
    rng = np.random.default_rng(201)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        z = random_point(rng, n, scale=0.8)
        assert minkowski_value(Ball(n), z) == pytest.approx(np.linalg.norm(z), abs=1e-10)
        assert minkowski_value(Polydisc(n), z) == pytest.approx(np.max(np.abs(z)), abs=1e-10)
    assert minkowski_value(UnitDisc(), np.array([0.3 - 0.4j])) == pytest.approx(0.5, abs=1e-12)


def test_minkowski_homogeneity_weighted():
    rng = np.random.default_rng(202)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        p = rng.uniform(0.4, 2.5, size=n)
        k = tuple(int(v) for v in rng.integers(1, 4, size=n))
        dom = Ellipsoid(tuple(p), weights=k)
        z = random_point(rng, n, scale=0.7)
        lam = rng.uniform(0.1, 1.5) * np.exp(2j * np.pi * rng.uniform())
        zl = np.array([lam ** k[j] * z[j] for j in range(n)])
        assert abs(minkowski_value(dom, zl) - abs(lam) * minkowski_value(dom, z)) <= 1e-9


def test_minkowski_membership_consistency():
    rng = np.random.default_rng(203)
    for _ in range(150):
        n = int(rng.integers(1, 4))
        dom = Ellipsoid(tuple(rng.uniform(0.4, 2.0, size=n)),
                        weights=tuple(int(v) for v in rng.integers(1, 3, size=n)))
        z = random_point(rng, n, scale=0.6)
        h = minkowski_value(dom, z)
        d = membership_defect(dom, z)
        if d < 0:
            assert h < 1.0 - 1e-10 or h == pytest.approx(1.0, abs=1e-9)
        if h < 1.0 - 1e-10:
            assert d < 0


def test_minkowski_many_matches_scalar():
    rng = np.random.default_rng(204)
    dom = Ellipsoid((0.5, 1.5))
    Z = random_point(rng, 2 * 40, scale=0.7).reshape(40, 2)
    vec = minkowski_many(dom, Z)
    for i in range(40):
        assert vec[i] == pytest.approx(minkowski_value(dom, Z[i]), abs=1e-10)


def test_custom_gauges_scale_linearly():
    rng = np.random.default_rng(205)
    for dom in (squared_sum_gauge(), semilinear_gauge()):
        for _ in range(50):
            z = random_point(rng, dom.dim, scale=0.5)
            t = rng.uniform(0.2, 2.0)
            h0 = minkowski_value(dom, z)
            h1 = minkowski_value(dom, t * z)
            assert abs(h1 - t * h0) < 1e-9


# ---------------------------------------------------------------------------
# Boundary sampling
# ---------------------------------------------------------------------------

def test_boundary_samples_sit_on_boundary():
    dom = Ellipsoid((0.5, 1.0), weights=(1, 2))
    Z = boundary_samples(dom, 500, seed=42)
    g = minkowski_many(dom, Z)
    assert np.max(np.abs(g - 1.0)) < 1e-9


def test_boundary_samples_deterministic():
    dom = Ball(3)
    Z1 = boundary_samples(dom, 200, seed=7)
    Z2 = boundary_samples(dom, 200, seed=7)
    Z3 = boundary_samples(dom, 200, seed=8)
    assert np.array_equal(Z1, Z2)
    assert not np.array_equal(Z1, Z3)


# ---------------------------------------------------------------------------
# Convexity and serialization
# ---------------------------------------------------------------------------

def test_convexity_check_examples():
    assert convexity_check(EllipsoidSpec((0.5, 0.5)))
    assert convexity_check(EllipsoidSpec((1.0, 1.0)))
    assert not convexity_check(EllipsoidSpec((0.4, 1.0)))


def test_domain_json_round_trip():
    rng = np.random.default_rng(206)
    domains = [
        UnitDisc(),
        Ball(3),
        Polydisc(2),
        Ellipsoid((0.5, 1.25), weights=(1, 2)),
        squared_sum_gauge(),
        semilinear_gauge(),
    ]
    for dom in domains:
        back = domain_from_json(dom.to_json())
        z = random_point(rng, dom.dim, scale=0.5)
        assert back.dim == dom.dim
        assert minkowski_value(back, z) == pytest.approx(minkowski_value(dom, z), abs=1e-12)


# ---------------------------------------------------------------------------
# Exponent class membership
# ---------------------------------------------------------------------------

def sn_oracle(p):
    """Brute force over the bounded union representation of the class.

    A vector lies in the class exactly when its distinct values can be
    realized as {b_1, ..., b_{k-1}, b_k / 2} with 1 <= b_i <= b_k.  At most
    one distinct value can play the halved role, so enumerating that choice
    (including "none") over the distinct values is an exhaustive search.
    Exact rational arithmetic throughout.
    """
    vals = set(Fraction(x) for x in p)
    for halved in [None, *sorted(vals)]:
        rest = vals - ({halved} if halved is not None else set())
        if any(v < 1 for v in rest):
            continue
        if halved is None:
            return True
        bk = 2 * halved
        if bk >= 1 and all(bk >= v for v in rest):
            return True
    return False


def test_sn_spec_examples():
    member, witness = sn_membership((0.5, 0.5))
    assert member and sn_witness_valid((0.5, 0.5), witness)
    member, _ = sn_membership((1.0, 2.0))
    assert member
    member, reason = sn_membership((0.5, 1.5))
    assert not member
    assert reason == "2*min < max"


def test_sn_matches_oracle_quarter_grid():
    grid = [Fraction(j, 4) for j in range(2, 13)]
    for n in (2, 3):
        for p in product(grid, repeat=n):
            got, detail = sn_membership(tuple(float(v) for v in p))
            want = sn_oracle(p)
            assert got == want, f"disagreement at {p}"
            if got:
                assert sn_witness_valid(tuple(float(v) for v in p), detail)


def test_sn_rejects_empty():
    with pytest.raises(ValueError):
        sn_membership(())
