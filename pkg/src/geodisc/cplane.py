"""Scalar building blocks on the unit disc.

Moebius factors m_a(z) = (z - a)/(1 - conj(a) z), finite Blaschke products,
univariate polynomials, the Poincare distance, and the Schur reduction that
peels one Blaschke degree per step.  Everything evaluates through numpy, so
``lam`` may be a scalar or an ndarray.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleDataError, NotReducibleError
from .policy import DEFAULT_POLICY, NumericPolicy


def moebius(alpha, lam):
    """(lam - alpha) / (1 - conj(alpha) lam), the disc automorphism sending alpha to 0."""
    return (lam - alpha) / (1.0 - np.conj(alpha) * lam)


@dataclass(frozen=True)
class MoebiusMap:
    """Disc automorphism with zero at ``alpha``; |alpha| < 1 enforced at construction."""

    alpha: complex

    def __post_init__(self):
        if abs(self.alpha) >= 1.0 - 1e-12:
            raise ValueError(f"Moebius zero must lie strictly inside the disc, got |alpha|={abs(self.alpha)}")

    def __call__(self, lam):
        return moebius(self.alpha, lam)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(-self.alpha)


def moebius_eval(m: MoebiusMap, lam):
    return m(lam)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product ``unimodular_factor * prod_j m_{zeros[j]}``.

    Degree equals the number of zeros (with multiplicity).  The representation
    by zeros is exact under Schur reduction.  When a product is only known up
    to a unimodular factor we normalize that factor to have nonnegative real
    part (ties broken by nonnegative imaginary part); this is a convention of
    this library, nothing canonical.
    """

    unimodular_factor: complex = 1.0 + 0.0j
    zeros: tuple = ()

    def __post_init__(self):
        if abs(abs(self.unimodular_factor) - 1.0) > 1e-12:
            raise ValueError("leading factor must be unimodular")
        for z in self.zeros:
            if abs(z) >= 1.0:
                raise ValueError("Blaschke zeros must lie strictly inside the disc")
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, lam):
        out = np.multiply(np.asarray(lam, dtype=complex) * 0 + 1, self.unimodular_factor)
        for z in self.zeros:
            out = out * moebius(z, lam)
        if np.isscalar(lam) or np.ndim(lam) == 0:
            return complex(out)
        return out

    def sorted_zeros(self) -> tuple:
        return tuple(sorted(self.zeros, key=lambda z: (z.real, z.imag)))

    @staticmethod
    def monomial(degree: int) -> "BlaschkeProduct":
        """lambda**degree as a Blaschke product."""
        return BlaschkeProduct(1.0, (0.0,) * degree)

    def to_json(self) -> dict:
        return {
            "factor": [self.unimodular_factor.real, self.unimodular_factor.imag],
            "zeros": [[z.real, z.imag] for z in self.zeros],
        }

    @staticmethod
    def from_json(d: dict) -> "BlaschkeProduct":
        zeta = complex(d["factor"][0], d["factor"][1])
        zeros = tuple(complex(a, b) for a, b in d["zeros"])
        return BlaschkeProduct(zeta, zeros)


def blaschke_eval(b: BlaschkeProduct, lam):
    return b(lam)


def normalize_unimodular(zeta: complex) -> complex:
    """Pick the representative of {zeta, -zeta} with Re >= 0, ties by Im >= 0."""
    if zeta.real > 0 or (zeta.real == 0 and zeta.imag >= 0):
        return zeta
    return -zeta


@dataclass(frozen=True)
class ComplexPolynomial:
    """Univariate polynomial, coefficients ascending in the degree."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(v) for v in self.coeffs)
        # strip trailing zeros but keep at least one coefficient
        n = len(c)
        while n > 1 and c[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=complex)
        out = np.zeros_like(lam)
        for c in reversed(self.coeffs):
            out = out * lam + c
        if out.ndim == 0:
            return complex(out)
        return out

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, v in enumerate(b):
            a[i] += v
        return ComplexPolynomial(tuple(a))

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(np.convolve(self.coeffs, other.coeffs)))

    def scale(self, c: complex) -> "ComplexPolynomial":
        return ComplexPolynomial(tuple(c * v for v in self.coeffs))


def lagrange_polynomial(nodes, values) -> ComplexPolynomial:
    """Interpolating polynomial of degree <= len(nodes)-1 through (nodes, values)."""
    nodes = [complex(x) for x in nodes]
    acc = ComplexPolynomial((0.0,))
    for j, wj in enumerate(values):
        basis = ComplexPolynomial((1.0,))
        denom = 1.0 + 0.0j
        for k, xk in enumerate(nodes):
            if k == j:
                continue
            basis = basis * ComplexPolynomial((-xk, 1.0))
            denom *= nodes[j] - xk
        acc = acc + basis.scale(complex(wj) / denom)
    return acc


def poincare_distance(a: complex, b: complex) -> float:
    """Hyperbolic distance on the disc, arctanh |m_a(b)|."""
    if abs(a) >= 1 or abs(b) >= 1:
        raise ValueError("Poincare distance needs both points inside the open disc")
    return math.atanh(abs(moebius(a, b)))


def _zero_key(samples: dict):
    for k in samples:
        if abs(complex(k)) < 1e-15:
            return k
    return None


def schur_step(samples: dict, f0: complex | None = None,
               policy: NumericPolicy = DEFAULT_POLICY) -> dict:
    """One Schur reduction of a sampled closed-disc function.

    ``samples`` maps disc points to values of f; the set must contain 0.
    Returns samples of g(lam) = m_{f0}(f(lam)) / lam on the same points.
    The value at 0 is the derivative of m_{f0} o f there, recovered by
    extrapolating q(lam)/lam through the four nonzero samples closest to the
    origin (a 4-point Richardson-type stencil; exact for polynomial q of
    degree <= 4).
    """
    key0 = _zero_key(samples)
    if key0 is None:
        raise ValueError("sample set must contain the origin")
    if f0 is None:
        f0 = samples[key0]
    f0 = complex(f0)
    if abs(f0) >= 1.0 - policy.unimodular_tol:
        raise NotReducibleError("pivot value is unimodular; the function is a constant, not reducible")

    g = {}
    nonzero = []
    for lam, w in samples.items():
        lc = complex(lam)
        if abs(lc) < 1e-15:
            continue
        val = moebius(f0, complex(w)) / lc
        g[lam] = val
        nonzero.append((lc, val))
    if len(nonzero) < 1:
        raise ValueError("need at least one nonzero sample point")
    nonzero.sort(key=lambda t: abs(t[0]))
    stencil = nonzero[: min(4, len(nonzero))]
    # Lagrange extrapolation of q(lam)/lam to lam = 0
    val0 = 0.0 + 0.0j
    for i, (xi, gi) in enumerate(stencil):
        w = 1.0 + 0.0j
        for k, (xk, _) in enumerate(stencil):
            if k != i:
                w *= (0.0 - xk) / (xi - xk)
        val0 += gi * w
    g[key0] = val0
    return g


def blaschke_degree_of_data(nodes, values, policy: NumericPolicy = DEFAULT_POLICY) -> int:
    """Minimal degree of a finite Blaschke product through the data.

    Runs the node-value Schur recursion, pivoting on the first node at each
    step.  Terminates when the remaining values form a unimodular constant
    (degree = steps taken) or when the data is exhausted (each leftover
    interior value costs one more degree).  Raises InfeasibleDataError when a
    transformed value leaves the closed disc, i.e. no closed-disc holomorphic
    interpolant exists at all.
    """
    data = [(complex(x), complex(w)) for x, w in zip(nodes, values)]
    if len(data) == 0:
        raise ValueError("need at least one node")
    steps = 0
    while data:
        vals = [w for _, w in data]
        mods = [abs(w) for w in vals]
        if max(mods) > 1.0 + policy.unimodular_tol:
            raise InfeasibleDataError(f"value of modulus {max(mods)} after {steps} reductions")
        if max(mods) >= 1.0 - policy.unimodular_tol:
            # an interior point of modulus one forces a unimodular constant
            w0 = vals[mods.index(max(mods))]
            if all(abs(w - w0) <= 1e-8 for w in vals):
                return steps
            raise InfeasibleDataError("distinct values of modulus one at interior nodes")
        if len(data) == 1:
            # one interior value: a degree-1 product through it always exists
            return steps + 1
        (x0, w0), rest = data[0], data[1:]
        data = [(x, moebius(w0, w) / moebius(x0, x)) for x, w in rest]
        steps += 1
    return steps
