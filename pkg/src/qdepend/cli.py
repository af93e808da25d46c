"""Command-line front end.

Equation documents are JSON::

    {"t": 2,
     "lambda": {"q_exp": 0, "zeta_exp": 0, "torsion_order": null,
                "free_symbols": [], "symbol_exps": {}, "declared_relations": []},
     "T": 0,
     "orbits": [{"base_name": "r", "factors": [{"k": 0, "d": 0, "s": 1}]}]}

``torsion_order`` adds a generator ``eps`` of that order.  Unless
``symbol_exps`` says otherwise, lambda carries ``eps`` and every free symbol
with exponent 1.  Exit codes: 0 success, 1 usage or schema error, 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from .constgroup import ConstGroup, ConstGroupError
from .criterion import InternalInvariantError, decide
from .exactalg import circulant
from .gm_subgroups import MonomialSystem, group_structure, solve_system
from .pseudofield import ComponentMap, PfElement, enumerate_lifts, f_sigma1, quartic_split_ring, poly_image, taylor_hom
from .ratfun import FactoredRatFun, MultFunction, RootRef
from .theta import ThetaParams, annulus_samples, default_kind2, functional_eq_residual, relation_check, relation_spec
from .witness import Witness, brute_force_oracle, verify

EPS_SYMBOL = "eps"
_SAFE_INT = 2**53


class SchemaError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------


def _int(doc: dict, key: str, default=None) -> int:
    val = doc.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        if isinstance(val, str) and val.lstrip("-").isdigit():
            return int(val)
        raise SchemaError(f"{key!r} must be an integer, got {val!r}")
    return val


def load_equation(doc: Any) -> FactoredRatFun:
    """Validate an equation document and build the factored right-hand side."""
    if not isinstance(doc, dict):
        raise SchemaError("equation document must be a JSON object")
    unknown = set(doc) - {"t", "lambda", "T", "orbits", "name"}
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}")
    t = _int(doc, "t")
    if t < 2:
        raise SchemaError(f"t must be at least 2, got {t}")
    lam = doc.get("lambda", {}) or {}
    if not isinstance(lam, dict):
        raise SchemaError("'lambda' must be an object")
    free = list(lam.get("free_symbols", []))
    orders = {}
    if lam.get("torsion_order") is not None:
        orders[EPS_SYMBOL] = _int(lam, "torsion_order")
    relations = lam.get("declared_relations", [])
    if not isinstance(relations, list) or not all(isinstance(r, dict) for r in relations):
        raise SchemaError("'declared_relations' must be a list of {symbol: exponent} objects")
    try:
        group = ConstGroup(t, free, orders, relations)
        exps = {"q": _int(lam, "q_exp", 0), "zeta": _int(lam, "zeta_exp", 0)}
        default_syms = {s: 1 for s in free} | {s: 1 for s in orders}
        for s, e in dict(lam.get("symbol_exps", default_syms)).items():
            if s not in group.names:
                raise SchemaError(f"unknown symbol {s!r} in lambda")
            exps[s] = exps.get(s, 0) + int(e)
        constant = group.element(exps)
    except (ConstGroupError, KeyError) as exc:
        raise SchemaError(str(exc)) from exc

    orbits = doc.get("orbits", [])
    if not isinstance(orbits, list):
        raise SchemaError("'orbits' must be a list")
    bases, factors = [], []
    for i, orb in enumerate(orbits):
        if not isinstance(orb, dict) or "base_name" not in orb:
            raise SchemaError(f"orbit {i} needs a 'base_name'")
        bases.append(str(orb["base_name"]))
        for fac in orb.get("factors", []):
            k, d, s = _int(fac, "k"), _int(fac, "d", 0), _int(fac, "s")
            if not 0 <= k < t:
                raise SchemaError(f"k={k} outside [0, {t})")
            if s == 0:
                raise SchemaError("factor exponents must be nonzero")
            factors.append((RootRef(i, k, d), s))
    if len(set(bases)) != len(bases):
        raise SchemaError("orbit base names must be unique")
    return FactoredRatFun(group, bases, constant, _int(doc, "T", 0), factors)


def load_witness(a: FactoredRatFun, doc: Any) -> Witness:
    if not isinstance(doc, dict) or "phi" not in doc:
        raise SchemaError("witness document needs 'phi'")
    phi = MultFunction(int(e) for e in doc["phi"])
    b_doc = doc.get("b_factored", doc.get("b", {}))
    if isinstance(b_doc, str):
        if b_doc.strip() != "1":
            raise SchemaError("give b in factored form under 'b_factored'")
        b_doc = {}
    try:
        b = FactoredRatFun.from_json(a.group, a.bases, b_doc)
    except (KeyError, ValueError, ConstGroupError) as exc:
        raise SchemaError(f"bad witness b: {exc}") from exc
    return Witness(phi, b)


def jsonable(obj: Any) -> Any:
    """Recursively stringify integers outside the 53-bit range."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= _SAFE_INT else obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def verdict_report(a: FactoredRatFun, trace: bool = False) -> dict:
    v = decide(a)
    out: dict = {"dependent": v.dependent, "case": int(v.case), "zero_rows": v.zero_rows}
    if v.witness is not None:
        out["witness"] = v.witness.to_json(verified=True)
    if trace:
        out["trace"] = {
            "a_matrix": [list(r) for r in v.summary.a],
            "D_matrix": v.D.as_coefficients(),
            "D_text": v.D.as_strings(),
            "classification": {
                "case": int(v.classification.case),
                "uv": list(v.classification.uv) if v.classification.uv else None,
                "w": v.classification.w,
            },
            **v.trace,
        }
    return out


def cmd_decide(doc, args) -> dict:
    return verdict_report(load_equation(doc), args.trace)


def cmd_witness(doc, args):
    v = decide(load_equation(doc))
    if not v.dependent:
        return "independent"
    return v.witness.to_json(verified=True)


def cmd_verify(doc, args) -> dict:
    if not isinstance(doc, dict) or "equation" not in doc or "witness" not in doc:
        raise SchemaError("verify expects {'equation': ..., 'witness': ...}")
    a = load_equation(doc["equation"])
    return {"verified": verify(a, load_witness(a, doc["witness"]))}


def cmd_oracle(doc, args) -> dict:
    a = load_equation(doc)
    bound = args.bound if args.bound is not None else 2 * a.t
    w = brute_force_oracle(a, bound)
    out = {"bound": bound, "found": w is not None}
    if w is not None:
        out["witness"] = w.to_json(verified=True)
    return out


def cmd_gm_group(doc, args) -> dict:
    if args.circulant:
        row = [int(x) for x in args.circulant.split(",")]
        return group_structure(circulant(row), len(row)).to_json()
    try:
        system = MonomialSystem.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad monomial system: {exc}") from exc
    return solve_system(system).to_json()


def cmd_theta(args) -> dict:
    try:
        p = ThetaParams(args.q, args.truncation, annulus_samples(args.samples, args.t))
        u, v, n = args.u, args.v, args.n
        if args.kind == 2 and None in (u, v, n):
            u, v, n = default_kind2(args.t)
        spec = relation_spec(args.kind, args.t, u, v, n)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    fe = functional_eq_residual(p)
    rel = relation_check(args.kind, args.t, p, u, v, n)
    out = {
        "kind": args.kind,
        "t": args.t,
        "q": args.q,
        "truncation": args.truncation,
        "samples": args.samples,
        "functional_eq_residual": fe,
        "relation_residual": rel,
        "tolerance": args.tol,
        "pass": fe < args.tol and rel < args.tol,
    }
    if args.kind == 2:
        out.update(u=u, v=v, n=n, nondegenerate=spec.nondegenerate)
    return out


def cmd_pseudofield(args) -> dict:
    pf = quartic_split_ring()
    consts = pf.constants_subring(["sigma"])
    x2 = poly_image(pf, [0, 0, 1])
    report = {
        "ring": pf.structure_report(),
        "sigma_constants": consts.to_json(),
        "x^2_is_sigma_constant": pf.act("sigma", x2) == x2,
        "simple_under_sigma_rho": pf.is_simple(),
        "simple_under_sigma": pf.is_simple(["sigma"]),
        "taylor": {},
    }
    for factors in ([2], [4], [2, 2]):
        A = f_sigma1(1, factors)
        F = f_sigma1(1, factors)
        mu = (0,) * len(factors)
        phi = ComponentMap(0)
        Psi = taylor_hom(A, phi, mu, F)
        lifts = enumerate_lifts(A, phi, mu, F)
        report["taylor"]["x".join(map(str, factors))] = {
            "lifts": len(lifts),
            "matches_formula": all(Psi(e) == PfElement(cm(e) for cm in lifts[0]) for e in A.idempotents()),
        }
    return report


DOC_COMMANDS: dict[str, Callable] = {
    "decide": cmd_decide,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "gm-group": cmd_gm_group,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdepend", description="Periodic dependence of q-difference equation solutions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in [
        ("decide", "run the zero-row criterion and print the verdict"),
        ("witness", "print a verified witness or 'independent'"),
        ("verify", "check an external witness against an equation"),
        ("oracle", "bounded brute-force witness search"),
        ("gm-group", "structure of a multiplicative subgroup"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("document", nargs="?", help="JSON file ('-' for stdin)")
        p.add_argument("--batch", help="JSON file holding a list of documents")
        p.add_argument("--trace", action="store_true", help="include intermediate matrices")
        if name == "oracle":
            p.add_argument("--bound", type=int, help="max |n_r| (default 2t)")
        if name == "gm-group":
            p.add_argument("--circulant", help="comma-separated first row, e.g. 1,0,1")
    th = sub.add_parser("theta-check", help="numeric theta relation checks")
    th.add_argument("--kind", type=int, choices=(1, 2, 3), default=3)
    th.add_argument("--t", type=int, default=3)
    th.add_argument("--q", type=float, default=2.0)
    th.add_argument("--truncation", type=int, default=40)
    th.add_argument("--samples", type=int, default=32)
    th.add_argument("--u", type=int)
    th.add_argument("--v", type=int)
    th.add_argument("--n", type=int)
    th.add_argument("--tol", type=float, default=1e-9)
    sub.add_parser("pseudofield-demo", help="the Q(i)[x]/(x^4-1) example and Taylor lifts")
    return parser


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "theta-check":
            result = cmd_theta(args)
        elif args.command == "pseudofield-demo":
            result = cmd_pseudofield(args)
        else:
            func = DOC_COMMANDS[args.command]
            if args.batch:
                docs = _read_json(args.batch)
                if not isinstance(docs, list):
                    raise SchemaError("--batch file must hold a JSON list")
                result = [func(d, args) for d in docs]
            elif args.document or (args.command == "gm-group" and args.circulant):
                result = func(_read_json(args.document) if args.document else None, args)
            else:
                raise SchemaError("a document or --batch is required")
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        print(result, file=out)
    else:
        print(json.dumps(jsonable(result), indent=2, sort_keys=True), file=out)
    return 0


def main() -> None:
    sys.exit(run())
