"""Command-line front end: JSON in, JSON report out, CSV for profiles.

Verbs map one-to-one onto library operations.  Every report embeds the
numeric policy, the seed, and the package version, and serializes with
sorted keys so identical inputs give byte-identical reports.  Exit codes:
0 success / certified / true, 2 refuted / false / infeasible,
3 inconclusive / unknown, 1 error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

import jsonschema

from . import __version__
from .certify import (CERTIFIED, INCONCLUSIVE, REFUTED, ball3_certificate,
                      ball_monomial_certificate, family_certificate_inputs,
                      family_domain, family_map, power_pair_slack,
                      properness_profile, verify_left_inverse)
from .cplane import BlaschkeProduct, blaschke_degree_of_data, lagrange_polynomial
from .domains import domain_from_json, sn_membership
from .errors import (DegenerateInstanceError, GaugeError, GeodiscError,
                     InfeasibleDataError)
from .maps import (ball3_equivalent_params, ball3_solve_params,
                   ball3_verify_params, edigarian_check, edigarian_complete,
                   edigarian_normalize)
from .mapspec import MapSpec, MultiPoly, Polynomial
from .pick import (INDEFINITE, SINGULAR_PSD, PickData, classify_pick,
                   falsify_weak_extremality)
from .policy import DEFAULT_POLICY

VERBS = ("pick", "schur", "certify", "edigarian", "ball3", "sn",
         "falsify", "profile", "family")


def _load_schema(verb: str) -> dict:
    text = resources.files("geodisc").joinpath("schemas", f"{verb}.v1.json").read_text()
    return json.loads(text)


def _cpx(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    return complex(pair[0], pair[1])


def _pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _json_default(obj):
    import numpy as np
    if isinstance(obj, complex):
        return _pair(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return _pair(complex(obj))
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj)!r}")


# ---------------------------------------------------------------------------
# verb handlers: (doc, policy, seed) -> (exit_code, result dict)
# ---------------------------------------------------------------------------

def _cmd_pick(doc, policy, seed):
    data = PickData(tuple(_cpx(x) for x in doc["nodes"]),
                    tuple(_cpx(x) for x in doc["values"]))
    v = classify_pick(data, policy)
    if v.tag == SINGULAR_PSD:
        feasibility, code = "true", 0
    elif v.tag == INDEFINITE:
        feasibility, code = "infeasible", 2
    else:
        feasibility, code = "false", 2
    return code, {
        "classification": v.tag,
        "rank": v.rank,
        "null_dim": v.null_dim,
        "forced_degree": v.forced_degree,
        "min_eigenvalue": v.min_eigenvalue,
        "matrix_norm": v.norm,
        "weak_extremal": feasibility,
    }


def _cmd_schur(doc, policy, seed):
    nodes = [_cpx(x) for x in doc["nodes"]]
    values = [_cpx(x) for x in doc["values"]]
    try:
        deg = blaschke_degree_of_data(nodes, values, policy)
    except InfeasibleDataError as exc:
        return 2, {"feasible": False, "reason": str(exc)}
    return 0, {"feasible": True, "degree": deg}


def _certificate_inputs(doc, policy, seed):
    if "family" in doc:
        name, m, a = doc["family"], doc["m"], doc["a"]
        if name in ("power-pair", "ball-power-pair"):
            extra = {"reason": f"family {name!r} admits no polynomial left inverse"}
            if name == "power-pair":
                extra["slack"] = power_pair_slack(a)
            return None, extra
        f, F, B, dom, mc = family_certificate_inputs(name, m, a)
        return (f, F, B, dom, mc), None
    if "ball_monomial" in doc:
        spec = doc["ball_monomial"]
        cert = ball_monomial_certificate(spec["m"], spec["b"], seed=seed, policy=policy)
        return cert, None
    if "ball3" in doc:
        cert = ball3_certificate(doc["ball3"]["a"], seed=seed, policy=policy)
        return cert, None
    f = MapSpec.from_json(doc["map"])
    F = MultiPoly.from_json(doc["left_inverse"])
    B = BlaschkeProduct.from_json(doc["blaschke"])
    dom = domain_from_json(doc["domain"])
    return (f, F, B, dom, doc["m"]), None


def _cmd_certify(doc, policy, seed):
    from .certify import Certificate
    built, refusal = _certificate_inputs(doc, policy, seed)
    if refusal is not None:
        return 2, {"verdict": REFUTED, **refusal}
    if isinstance(built, Certificate):
        cert = built
    else:
        cert = verify_left_inverse(*built, seed=seed, policy=policy)
    code = {CERTIFIED: 0, REFUTED: 2, INCONCLUSIVE: 3}[cert.verdict]
    return code, {"verdict": cert.verdict, "certificate": cert.to_json()}


def _cmd_edigarian(doc, policy, seed):
    a = [_cpx(x) for x in doc["a"]]
    p = list(doc["p"])
    alpha = [[_cpx(x) for x in row] for row in doc["alpha"]]
    r = [list(row) for row in doc["r"]]
    build = edigarian_normalize if doc.get("normalize") else edigarian_complete
    try:
        form = build(a, p, alpha, r, policy)
    except InfeasibleDataError as exc:
        return 2, {"completed": False, "reason": str(exc)}
    except DegenerateInstanceError as exc:
        return 3, {"completed": False, "reason": str(exc)}
    return 0, {
        "completed": True,
        "form": form.to_json(),
        "alpha0": [_pair(v) for v in form.alpha0],
        "residual": edigarian_check(form),
    }


def _cmd_ball3(doc, policy, seed):
    if "forward" in doc:
        spec = doc["forward"]
        alpha, beta, gamma = ball3_equivalent_params(spec["b"], _cpx(spec["c"]))
        return 0, {"alpha": alpha, "beta": beta, "gamma": _pair(gamma),
                   "alpha_sq": alpha * alpha, "beta_sq": beta * beta}
    spec = doc["inverse"]
    try:
        b, c = ball3_solve_params(spec["p"], spec["q"], policy)
    except GaugeError as exc:
        return 3, {"solved": False, "reason": str(exc)}
    return 0, {"solved": True, "b": b, "c": c,
               "residual": ball3_verify_params(b, c, spec["p"], spec["q"])}


def _cmd_sn(doc, policy, seed):
    member, detail = sn_membership(tuple(doc["p"]))
    if member:
        return 0, {"member": True, "witness": list(detail)}
    return 2, {"member": False, "reason": detail}


def _cmd_falsify(doc, policy, seed):
    nodes = [_cpx(x) for x in doc["nodes"]]
    dom = domain_from_json(doc["domain"])
    if "map" in doc:
        f = MapSpec.from_json(doc["map"])
    else:
        values = [[_cpx(v) for v in row] for row in doc["values"]]
        comps = [Polynomial(lagrange_polynomial(nodes, [row[j] for row in values]))
                 for j in range(dom.dim)]
        f = MapSpec(comps, {"construction": "lagrange_data"})
    if "restarts" in doc:
        policy = policy.with_(falsifier_restarts=doc["restarts"])
    res = falsify_weak_extremality(f, dom, nodes, budget=doc.get("budget"),
                                   seed=seed, policy=policy)
    result = {
        "status": res.status,
        "best_defect": res.best_defect,
        "evaluations": res.evaluations,
        "restarts": res.restarts,
        "witness": res.witness.to_json() if res.witness is not None else None,
    }
    return (0 if res.falsified else 3), result


def _cmd_profile(doc, policy, seed):
    if "family" in doc:
        spec = doc["family"]
        f = family_map(spec["name"], spec["m"], spec["a"])
        dom = family_domain(spec["name"])
    else:
        f = MapSpec.from_json(doc["map"])
        dom = domain_from_json(doc["domain"])
    prof = properness_profile(f, dom, doc.get("n_rays", 16),
                              doc.get("n_radii", 12), policy)
    result = prof.to_json()
    result["csv"] = prof.to_csv()
    return (0 if prof.almost_proper else 2), result


def _cmd_family(doc, policy, seed):
    f = family_map(doc["name"], doc["m"], doc["a"])
    return 0, {"map": f.to_json(), "domain": family_domain(doc["name"]).to_json()}


_HANDLERS = {
    "pick": _cmd_pick,
    "schur": _cmd_schur,
    "certify": _cmd_certify,
    "edigarian": _cmd_edigarian,
    "ball3": _cmd_ball3,
    "sn": _cmd_sn,
    "falsify": _cmd_falsify,
    "profile": _cmd_profile,
    "family": _cmd_family,
}


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _apply_overrides(verb: str, args, policy):
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = int(args.seed)
    if args.samples is not None:
        overrides["boundary_samples"] = int(args.samples)
    if args.tol is not None:
        if verb == "pick":
            overrides["singular_rel_tol"] = float(args.tol)
        elif verb == "falsify":
            overrides["falsifier_margin"] = float(args.tol)
        elif verb == "schur":
            overrides["unimodular_tol"] = float(args.tol)
    return policy.with_(**overrides) if overrides else policy


def _emit(report: dict, output: str | None, csv_text: str | None):
    text = json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
        if csv_text is not None:
            base, _ = os.path.splitext(output)
            with open(base + ".csv", "w") as fh:
                fh.write(csv_text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geodisc",
        description="Extremal maps and geodesics of the disc into balanced domains")
    parser.add_argument("--version", action="version", version=f"geodisc {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)
    helps = {
        "pick": "classify the Pick matrix of disc interpolation data",
        "schur": "minimal Blaschke degree matching disc data",
        "certify": "verify a left inverse (family, ball, or explicit)",
        "edigarian": "complete / normalize the ellipsoid normal form",
        "ball3": "three-point ball normal-form parameter transforms",
        "sn": "decide membership of an exponent vector in the coincidence class",
        "falsify": "search for an interior interpolant refuting weak extremality",
        "profile": "radial boundary-defect profile and Hopf ratio (CSV)",
        "family": "construct a named counterexample family map",
    }
    for verb in VERBS:
        p = sub.add_parser(verb, help=helps[verb])
        p.add_argument("--input", required=True, help="path to the JSON input document")
        p.add_argument("--output", default=None, help="path for the JSON report (stdout if omitted)")
        p.add_argument("--seed", type=int, default=None, help="override the policy seed")
        p.add_argument("--samples", type=int, default=None, help="override the boundary sample count")
        p.add_argument("--tol", type=float, default=None,
                       help="override the verb's primary tolerance knob where it has one")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    verb = args.verb
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 1

    try:
        jsonschema.validate(doc, _load_schema(verb))
    except jsonschema.ValidationError as exc:
        print(f"error: input does not match the {verb} schema: {exc.message}", file=sys.stderr)
        return 1

    policy = _apply_overrides(verb, args, DEFAULT_POLICY)
    seed = policy.seed

    try:
        code, result = _HANDLERS[verb](doc, policy, seed)
    except (GeodiscError, ValueError, ArithmeticError, KeyError, IndexError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    csv_text = result.pop("csv", None) if verb == "profile" else None
    report = {
        "verb": verb,
        "version": __version__,
        "seed": seed,
        "policy": policy.to_json(),
        "input": doc,
        "result": result,
        "exit_code": code,
    }
    if csv_text is not None:
        report["result"]["csv_rows"] = csv_text.count("\n") - 1
        if not args.output:
            report["result"]["csv"] = csv_text
    _emit(report, args.output, csv_text)
    return code


if __name__ == "__main__":
    sys.exit(main())
