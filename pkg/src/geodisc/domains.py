"""Bounded domains used as targets: disc, polydisc, ball, complex ellipsoids
and two hand-rolled gauge domains.

Each domain carries integer scaling weights k and a signed membership defect
d(z) (negative inside, zero on the boundary).  The weighted Minkowski gauge

    h(z) = inf { t > 0 : (z_1/t^{k_1}, ..., z_n/t^{k_n}) inside }

is evaluated by monotone bisection on t; it satisfies h(lam^{k} z) = |lam| h(z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GaugeError
from .policy import DEFAULT_POLICY, NumericPolicy


class Domain:
    """Base: subclasses define dim, weights and defect_many."""

    dim: int
    weights: tuple
    name: str

    def defect_many(self, Z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def defect(self, z) -> float:
        Z = np.asarray(z, dtype=complex).reshape(1, self.dim)
        return float(self.defect_many(Z)[0])

    def contains(self, z) -> bool:
        return self.defect(z) < 0

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.name} dim={self.dim} k={self.weights}>"


@dataclass(frozen=True)
class EllipsoidSpec:
    """Exponent vector of a complex ellipsoid sum |z_j|**(2 p_j) < 1."""

    p: tuple

    def __post_init__(self):
        if len(self.p) == 0 or any(v <= 0 for v in self.p):
            raise ValueError("ellipsoid exponents must be positive")
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))


class Ellipsoid(Domain):
    def __init__(self, p, weights=None):
        spec = p if isinstance(p, EllipsoidSpec) else EllipsoidSpec(tuple(p))
        self.spec = spec
        self.dim = len(spec.p)
        self.weights = tuple(weights) if weights is not None else (1,) * self.dim
        self.name = "ellipsoid"

    @property
    def p(self):
        return self.spec.p

    def defect_many(self, Z):
        Z = np.asarray(Z, dtype=complex)
        expo = 2.0 * np.asarray(self.p)
        return (np.abs(Z) ** expo[None, :]).sum(axis=1) - 1.0

    def to_json(self):
        return {"type": "ellipsoid", "p": list(self.p), "k": list(self.weights)}


class Ball(Domain):
    def __init__(self, n: int, weights=None):
        self.dim = int(n)
        self.weights = tuple(weights) if weights is not None else (1,) * self.dim
        self.name = "ball"

    def defect_many(self, Z):
        Z = np.asarray(Z, dtype=complex)
        return (np.abs(Z) ** 2).sum(axis=1) - 1.0

    def to_json(self):
        return {"type": "ball", "n": self.dim, "k": list(self.weights)}


class Polydisc(Domain):
    def __init__(self, n: int, weights=None):
        self.dim = int(n)
        self.weights = tuple(weights) if weights is not None else (1,) * self.dim
        self.name = "polydisc"

    def defect_many(self, Z):
        Z = np.asarray(Z, dtype=complex)
        return np.abs(Z).max(axis=1) - 1.0

    def to_json(self):
        return {"type": "polydisc", "n": self.dim, "k": list(self.weights)}


class UnitDisc(Domain):
    def __init__(self):
        self.dim = 1
        self.weights = (1,)
        self.name = "unit_disc"

    def defect_many(self, Z):
        Z = np.asarray(Z, dtype=complex)
        return np.abs(Z[:, 0]) - 1.0

    def to_json(self):
        return {"type": "unit_disc"}


class CustomGauge(Domain):
    """Domain given by an arbitrary vectorized defect function."""

    def __init__(self, defect_many, dim: int, weights, name: str):
        self._fn = defect_many
        self.dim = dim
        self.weights = tuple(weights)
        self.name = name

    def defect_many(self, Z):
        return self._fn(np.asarray(Z, dtype=complex))

    def to_json(self):
        return {"type": self.name}


def squared_sum_gauge() -> CustomGauge:
    """{ (|z1| + |z2|)**2 + |z3| < 1 }, balanced for weights (1,1,1)."""

    def d(Z):
        A = np.abs(Z)
        return (A[:, 0] + A[:, 1]) ** 2 + A[:, 2] - 1.0

    return CustomGauge(d, 3, (1, 1, 1), "squared_sum_gauge")


def semilinear_gauge() -> CustomGauge:
    """{ |z1|**2 + |z2|**2 + |z3| < 1 }, quadratic in two slots, linear in one."""

    def d(Z):
        A = np.abs(Z)
        return A[:, 0] ** 2 + A[:, 1] ** 2 + A[:, 2] - 1.0

    return CustomGauge(d, 3, (1, 1, 1), "semilinear_gauge")


def domain_from_json(d: dict) -> Domain:
    t = d["type"]
    if t == "ellipsoid":
        return Ellipsoid(d["p"], d.get("k"))
    if t == "ball":
        return Ball(d["n"], d.get("k"))
    if t == "polydisc":
        return Polydisc(d["n"], d.get("k"))
    if t == "unit_disc":
        return UnitDisc()
    if t == "squared_sum_gauge":
        return squared_sum_gauge()
    if t == "semilinear_gauge":
        return semilinear_gauge()
    raise ValueError(f"unknown domain type {t!r}")


def membership_defect(dom: Domain, z) -> float:
    return dom.defect(z)


def _scaled(Z, t, k):
    # z_j / t**k_j rows; overflow to inf is fine for bracketing
    return Z / (t[:, None] ** k[None, :])


def minkowski_many(dom: Domain, Z, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Vectorized weighted Minkowski gauge by monotone bisection."""
    k = np.asarray(dom.weights, dtype=float)
    if np.any(k < 1):
        raise GaugeError("gauge evaluation requires all scaling weights >= 1")
    Z = np.asarray(Z, dtype=complex).reshape(-1, dom.dim)
    N = Z.shape[0]
    out = np.zeros(N)
    active = np.abs(Z).max(axis=1) > 0
    if not active.any():
        return out
    W = Z[active]
    M = W.shape[0]
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        hi = np.ones(M)
        for _ in range(600):
            d = dom.defect_many(_scaled(W, hi, k))
            grow = d >= 0
            if not grow.any():
                break
            hi[grow] *= 2.0
        else:
            raise GaugeError("no outer bracket after 600 doublings")
        lo = hi / 2.0
        for _ in range(2200):
            d = dom.defect_many(_scaled(W, lo, k))
            shrink = d < 0
            if not shrink.any():
                break
            lo[shrink] /= 2.0
        else:
            raise GaugeError("no inner bracket after 2200 halvings")
        for _ in range(policy.bisection_max_iter):
            mid = 0.5 * (lo + hi)
            d = dom.defect_many(_scaled(W, mid, k))
            inside = d < 0
            hi[inside] = mid[inside]
            lo[~inside] = mid[~inside]
            if np.max((hi - lo) / np.maximum(hi, 1e-300)) < 1e-15:
                break
    out[active] = 0.5 * (lo + hi)
    return out


def minkowski_value(dom: Domain, z, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Weighted Minkowski gauge of a single point."""
    Z = np.asarray(z, dtype=complex).reshape(1, dom.dim)
    return float(minkowski_many(dom, Z, policy)[0])


def boundary_samples(dom: Domain, count: int, seed: int,
                     policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Reproducible boundary points: Gaussian directions normalized to gauge 1."""
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((count, dom.dim)) + 1j * rng.standard_normal((count, dom.dim))
    h = minkowski_many(dom, Z, policy)
    if np.any(h <= 0):
        bad = np.flatnonzero(h <= 0)
        Z[bad] = 1.0  # measure-zero event; replace and renormalize
        h[bad] = minkowski_many(dom, Z[bad], policy)
    k = np.asarray(dom.weights, dtype=float)
    return Z / (h[:, None] ** k[None, :])


def convexity_check(spec: EllipsoidSpec) -> bool:
    """An ellipsoid in dimension >= 2 is convex iff every exponent is >= 1/2."""
    if len(spec.p) == 1:
        return True
    return min(spec.p) >= 0.5


def sn_membership(p) -> tuple:
    """Decide membership of an exponent vector in the scaled-half class.

    The class is generated from (1/2, ..., 1/2) by repeatedly multiplying all
    entries by a common factor c >= 1 and adjoining coordinates equal to 1.
    Equivalently: p belongs iff there is B >= 1 with every coordinate either
    in [1, B] or equal to B/2.  Closed form: min(p) >= 1/2 and either
    min(p) >= 1, or all sub-unit coordinates share one value v with
    2 v >= max(p).

    Returns (True, witness) where witness = (b_1, ..., b_K) realizes every
    coordinate inside {b_1, ..., b_{K-1}} union {b_K / 2}, or (False, reason).
    """
    p = tuple(float(v) for v in p)
    if len(p) == 0:
        raise ValueError("empty exponent vector")
    mn, mx = min(p), max(p)
    if mn < 0.5:
        return (False, "min(p) < 1/2")
    big = sorted({v for v in p if v >= 1.0})
    small = [v for v in p if v < 1.0]
    if not small:
        B = 2.0 * max(mx, 1.0)
        return (True, tuple(big) + (B,))
    v = small[0]
    if any(abs(u - v) > 0 for u in small):
        return (False, "sub-unit coordinates differ")
    if 2.0 * v < mx:
        return (False, "2*min < max")
    B = 2.0 * v
    return (True, tuple(big) + (B,))


def sn_witness_valid(p, witness) -> bool:
    """Check that a witness tuple realizes membership exactly."""
    if len(witness) == 0:
        return False
    bk = witness[-1]
    head = witness[:-1]
    if any(not (1.0 <= b <= bk) for b in head):
        return False
    if bk < 1.0:
        return False
    allowed_low = bk / 2.0
    for v in p:
        if any(abs(v - b) <= 1e-12 for b in head):
            continue
        if abs(v - allowed_low) <= 1e-12:
            continue
        return False
    return True
