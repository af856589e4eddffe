"""Interpolation feasibility on the disc and falsification of weak extremality.

The Pick matrix of data (nodes, values) has entries
(1 - w_i conj(w_j)) / (1 - lam_i conj(lam_j)).  Its spectrum decides the
trichotomy: positive definite (strictly contractive interpolants exist),
singular positive semidefinite (the data forces a Blaschke product whose
degree equals the rank), indefinite (no closed-disc interpolant).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cplane import (BlaschkeProduct, ComplexPolynomial, blaschke_degree_of_data,
                     lagrange_polynomial, moebius)
from .domains import Domain, minkowski_many
from .errors import InconsistentDataError, InfeasibleDataError, PreconditionError
from .mapspec import Blaschke, MapSpec, Polynomial, Product, Subst, Sum
from .policy import DEFAULT_POLICY, NumericPolicy


@dataclass(frozen=True)
class PickData:
    """Distinct disc nodes with closed-disc target values."""

    nodes: tuple
    values: tuple

    def __post_init__(self):
        nodes = tuple(complex(x) for x in self.nodes)
        values = tuple(complex(w) for w in self.values)
        if len(nodes) != len(values) or len(nodes) == 0:
            raise ValueError("nodes and values must be nonempty and aligned")
        for x in nodes:
            if abs(x) >= 1:
                raise ValueError("nodes must lie inside the open disc")
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if abs(nodes[i] - nodes[j]) < 1e-8:
                    raise ValueError("nodes must be separated by at least 1e-8")
        for w in values:
            if abs(w) > 1 + 1e-12:
                raise ValueError("values must lie in the closed disc")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.nodes)


POSITIVE_DEFINITE = "positive_definite"
SINGULAR_PSD = "singular_psd"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class PickVerdict:
    """Spectral classification of a Pick matrix.

    rank counts eigenvalues above the band tol = singular_rel_tol * ||M||;
    null_dim counts those inside the band.  For singular PSD data the forced
    Blaschke degree equals rank (equivalently m - null_dim).
    """

    tag: str
    rank: int
    null_dim: int
    min_eigenvalue: float
    norm: float

    @property
    def forced_degree(self):
        return self.rank if self.tag == SINGULAR_PSD else None


def pick_matrix(data: PickData) -> np.ndarray:
    lam = np.asarray(data.nodes, dtype=complex)
    w = np.asarray(data.values, dtype=complex)
    num = 1.0 - np.outer(w, np.conj(w))
    den = 1.0 - np.outer(lam, np.conj(lam))
    return num / den


def classify_pick(data: PickData, policy: NumericPolicy = DEFAULT_POLICY) -> PickVerdict:
    M = pick_matrix(data)
    eigs = np.linalg.eigvalsh(M)
    norm = float(np.max(np.abs(eigs))) if len(eigs) else 0.0
    tol = policy.singular_rel_tol * norm
    n_neg = int(np.sum(eigs < -tol))
    n_pos = int(np.sum(eigs > tol))
    n_zero = len(eigs) - n_neg - n_pos
    mn = float(eigs[0])
    if n_neg > 0:
        return PickVerdict(INDEFINITE, n_pos, n_zero, mn, norm)
    if n_zero > 0:
        return PickVerdict(SINGULAR_PSD, n_pos, n_zero, mn, norm)
    return PickVerdict(POSITIVE_DEFINITE, n_pos, 0, mn, norm)


def disc_weak_extremality(data: PickData, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """True iff the data admits no interpolant with image compactly inside the disc.

    Singular PSD of rank >= 1 means the unique interpolant is a non-constant
    Blaschke product: extremal data.  Positive definite means strictly
    contractive interpolants exist.  Rank 0 (all values one unimodular
    constant) and indefinite data cannot come from a disc-valued map.
    """
    v = classify_pick(data, policy)
    if v.tag == POSITIVE_DEFINITE:
        return False
    if v.tag == SINGULAR_PSD:
        if v.rank == 0:
            raise InconsistentDataError("data forces a unimodular constant, not a disc map")
        return True
    raise InconsistentDataError("indefinite Pick matrix: no closed-disc interpolant")


def compact_interpolant(g: MapSpec, dom: Domain, nodes,
                        policy: NumericPolicy = DEFAULT_POLICY) -> MapSpec:
    """Interpolant with image compactly inside dom, matching g at the nodes.

    Shrinks g radially (g_r(lam) = g(lam/r)) and repairs the node values with
    the Lagrange polynomial of the shrinkage error: h = g_r + P.  The margin
    delta is read off a circle grid; r - 1 is halved from 0.5 until the grid
    defect of h stays below -delta/2.  The gauge defects of the supported
    domains are subharmonic along holomorphic maps, so circle grids carry the
    sup.
    """
    nodes = [complex(x) for x in nodes]
    grid = np.exp(2j * np.pi * np.arange(policy.construction_grid) / policy.construction_grid)
    dvals = dom.defect_many(g.eval_many(grid))
    delta = -float(np.max(dvals))
    if delta <= 0:
        raise PreconditionError("image of g is not compactly inside the domain")
    vgrid = np.exp(2j * np.pi * np.arange(policy.verification_grid) / policy.verification_grid)
    gnode = np.asarray([g(x) for x in nodes])
    t = 0.5
    for _ in range(50):
        r = 1.0 + t
        scaled = [Subst(c, Polynomial([0.0, 1.0 / r])) for c in g.components]
        grnode = np.stack([np.asarray([c(x) for x in nodes]) for c in scaled], axis=-1)
        w = gnode - grnode
        comps = []
        for j in range(g.dim):
            P = lagrange_polynomial(nodes, w[:, j])
            comps.append(Sum((scaled[j], Polynomial(P))))
        h = MapSpec(comps, {"construction": "compact_interpolant", "r": r})
        hd = dom.defect_many(h.eval_many(vgrid))
        if float(np.max(hd)) <= -0.5 * delta:
            # exactness check at the nodes
            for j, x in enumerate(nodes):
                if np.max(np.abs(h(x) - gnode[j])) > 1e-12:
                    raise PreconditionError("interpolation residual exceeded 1e-12")
            return h
        t *= 0.5
    raise PreconditionError("no admissible shrink radius found after 50 halvings")


@dataclass(frozen=True)
class FalsifierResult:
    falsified: bool
    witness: MapSpec | None
    best_defect: float
    evaluations: int
    restarts: int

    @property
    def status(self) -> str:
        return "falsified" if self.falsified else "unknown"


def _nodes_blaschke(nodes) -> BlaschkeProduct:
    return BlaschkeProduct(1.0, tuple(nodes))


def falsify_weak_extremality(f: MapSpec, dom: Domain, nodes,
                             budget: int | None = None,
                             seed: int | None = None,
                             policy: NumericPolicy = DEFAULT_POLICY) -> FalsifierResult:
    """One-sided search for an interpolant with image compactly inside dom.

    Candidates are h = L + B * Q: L the Lagrange interpolant of the sampled
    data, B the Blaschke product vanishing at the nodes, Q a polynomial map of
    degree <= m + degree margin.  Restart 0 starts from the least-squares
    minimizer of the mean-square boundary values and then runs a Lawson
    (iteratively reweighted least squares) streak, which converges toward the
    minimax interpolant in the candidate space; remaining restarts are random.
    Every stage polishes with coordinate descent on the max circle-grid
    defect.  A grid defect below -falsifier_margin falsifies weak extremality
    at the nodes; otherwise the result is Unknown.  Never claims extremality.
    """
    nodes = [complex(x) for x in nodes]
    m = len(nodes)
    n = dom.dim
    if budget is None:
        budget = policy.falsifier_budget
    if seed is None:
        seed = policy.seed
    dmax = m + policy.falsifier_degree_margin
    ncoef = dmax + 1

    data = np.asarray([f(x) for x in nodes])  # (m, n)
    grid = np.exp(2j * np.pi * np.arange(policy.construction_grid) / policy.construction_grid)
    B = _nodes_blaschke(nodes)
    Bg = B(grid)
    V = np.vander(grid, ncoef, increasing=True)  # (grid, ncoef)
    Lpolys = [lagrange_polynomial(nodes, data[:, j]) for j in range(n)]
    Lg = np.stack([P(grid) for P in Lpolys], axis=-1)  # (grid, n)

    margin = policy.falsifier_margin
    evals = 0

    def objective(H):
        return float(np.max(dom.defect_many(H)))

    def witness_from(C):
        comps = []
        for j in range(n):
            corr = Product((Blaschke(B), Polynomial(C[:, j])))
            comps.append(Sum((Polynomial(Lpolys[j]), corr)))
        return MapSpec(comps, {"construction": "falsifier_witness", "nodes": [[x.real, x.imag] for x in nodes]})

    # a candidate below the margin on the coarse grid must also clear an
    # independent fine grid (denser and half-step offset) before we claim a
    # witness; sub-grid excursions of the boundary values are caught here
    fine_state = {}

    def confirmed_defect(C):
        if not fine_state:
            k = np.arange(4096)
            fine = np.exp(2j * np.pi * np.concatenate([k, k + 0.5]) / 4096)
            fine_state["B"] = B(fine)
            fine_state["V"] = np.vander(fine, ncoef, increasing=True)
            fine_state["L"] = np.stack([P(fine) for P in Lpolys], axis=-1)
        Hf = fine_state["L"] + fine_state["B"][:, None] * (fine_state["V"] @ C)
        return float(np.max(dom.defect_many(Hf)))

    best_overall = np.inf
    restarts_used = 0
    per_restart = max(200, budget // max(1, policy.falsifier_restarts))
    trigger = -margin

    def attempt(C, cur):
        # confirm on the fine grid; on disagreement, demand twice the depth
        # before trying again so the search is not stuck re-confirming
        nonlocal trigger
        conf = confirmed_defect(C)
        if conf < -margin:
            return FalsifierResult(True, witness_from(C), conf, evals, restarts_used)
        trigger = 2.0 * cur
        return None

    for restart in range(policy.falsifier_restarts):
        if evals >= budget:
            break
        restarts_used += 1
        rng = np.random.default_rng(seed + restart)
        if restart == 0:
            # least-squares pull toward the origin: min sum |L + B V q|^2
            C = np.empty((ncoef, n), dtype=complex)
            for j in range(n):
                target = -Lg[:, j] / Bg
                C[:, j], *_ = np.linalg.lstsq(V, target, rcond=None)
        else:
            C = 0.1 * (rng.standard_normal((ncoef, n)) + 1j * rng.standard_normal((ncoef, n)))

        H = Lg + Bg[:, None] * (V @ C)
        cur = objective(H)
        evals += 1
        best_overall = min(best_overall, cur)
        if cur < trigger:
            hit = attempt(C, cur)
            if hit:
                return hit

        if restart == 0:
            # Lawson streak: reweight grid points by their gauge and re-solve;
            # the weights concentrate on the worst points and the iterates
            # approach the minimax candidate.
            w = np.ones(grid.shape[0])
            prev, stall = cur, 0
            for _ in range(40):
                if evals >= budget:
                    break
                sw = np.sqrt(w)
                A = (sw * Bg)[:, None] * V
                trialC = np.empty_like(C)
                for j in range(n):
                    trialC[:, j], *_ = np.linalg.lstsq(A, -sw * Lg[:, j], rcond=None)
                trialH = Lg + Bg[:, None] * (V @ trialC)
                trial = objective(trialH)
                evals += 1
                if trial < cur:
                    C, H, cur = trialC, trialH, trial
                    if cur < trigger:
                        hit = attempt(C, cur)
                        if hit:
                            return hit
                gauge = minkowski_many(dom, trialH, policy)
                w = w * np.maximum(gauge, 1e-12)
                total = float(w.sum())
                if not np.isfinite(total) or total <= 0:
                    break
                w = w / total
                if prev - trial < 1e-6:
                    stall += 1
                    if stall >= 5:
                        break
                else:
                    stall = 0
                prev = trial
            best_overall = min(best_overall, cur)

        step = 0.25
        while evals < restart * per_restart + per_restart and evals < budget and step > 1e-7:
            improved = False
            for t in range(ncoef):
                col = Bg * V[:, t]
                for j in range(n):
                    for delta in (step, -step, 1j * step, -1j * step):
                        H[:, j] += col * delta
                        trial = objective(H)
                        evals += 1
                        if trial < cur:
                            cur = trial
                            C[t, j] += delta
                            improved = True
                            if cur < trigger:
                                hit = attempt(C, cur)
                                if hit:
                                    return hit
                        else:
                            H[:, j] -= col * delta
                        if evals >= budget:
                            break
                    if evals >= budget:
                        break
                if evals >= budget:
                    break
            best_overall = min(best_overall, cur)
            if not improved:
                step *= 0.5

    return FalsifierResult(False, None, float(best_overall), evals, restarts_used)


def polydisc_test(components, m: int, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Weak m-extremality in the polydisc from per-component data.

    components: list of PickData, one per coordinate, sampled at the same m
    nodes.  True iff some coordinate's data forces a non-constant Blaschke
    product of degree <= m - 1.
    """
    for comp in components:
        if len(comp) != m:
            raise ValueError("each component must be sampled at the m nodes")
        deg = blaschke_degree_of_data(comp.nodes, comp.values, policy)
        if 1 <= deg <= m - 1:
            return True
    return False
