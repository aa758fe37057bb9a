"""Command-line front end: verify suites, per-entry geometry, phase products.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or parse
errors.  Output is deterministic for a fixed catalog, seed and trial count.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import Catalog, load_catalog
from .curvature import (
    classify_row, curvature, ricci, ricci_operator, scalar_curvature,
    solve_soliton,
)
from .liealg import LieAlgebra4
from .linalg import Mat4, RankAmbiguous, DegenerateError
from .notation import emit_sym_form, parse_sym_form
from .phase_space import (
    LSA2, LSAPair, assembled_brackets, is_lie_extendible, lsa_catalog,
)
from .scalars import Param, ParamDomain, ParseError, Scalar
from .structures import levi_civita, metric_from, validate_para_kahler
from .verify import SCOPES, run_scope

USAGE_ERROR = 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pk4lie",
        description="exact verification of para-Kahler structures on "
                    "four-dimensional Lie algebras")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=32)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("scope", choices=SCOPES)

    p_geom = sub.add_parser("geometry", help="connection, curvature and "
                                             "soliton data for one metric")
    p_geom.add_argument("entry", nargs="?", default=None,
                        help="catalog id, e.g. curvature/d4_half/1")
    p_geom.add_argument("--algebra", help="inline bracket table")
    p_geom.add_argument("--metric", help="inline symmetric form")
    p_geom.add_argument("--domain", default="", help="inline constraints")
    p_geom.add_argument("--set", action="append", default=[],
                        metavar="PARAM=RATIONAL",
                        help="evaluate at a parameter value (repeatable)")

    p_phase = sub.add_parser("phase", help="assemble a phase-space pair")
    p_phase.add_argument("base", help="left-symmetric algebra name, e.g. b2")
    p_phase.add_argument("dual", help="dual-side products, e.g. 'e3.e3=x*e4'"
                                      " (empty string for the trivial one)")

    p_dump = sub.add_parser("dump", help="print a catalog entry verbatim")
    p_dump.add_argument("entry")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code else 0

    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "geometry":
            return cmd_geometry(args)
        if args.command == "phase":
            return cmd_phase(args)
        if args.command == "dump":
            return cmd_dump(args)
    except (ParseError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    return USAGE_ERROR


def cmd_verify(args) -> int:
    cat = load_catalog()
    reports = run_scope(cat, args.scope, seed=args.seed, trials=args.trials)
    failed = sum(r.status == "FAIL" for r in reports)
    warned = sum(r.status == "WARN" for r in reports)
    if args.format == "json":
        print(json.dumps({
            "scope": args.scope, "seed": args.seed, "trials": args.trials,
            "status": "FAIL" if failed else ("WARN" if warned else "PASS"),
            "entries": [r.to_dict() for r in reports],
        }, indent=2))
    else:
        for r in reports:
            line = f"{r.status:4s} {r.entry_id}"
            bad = [c["name"] for c in r.checks if not c["ok"]]
            if bad:
                line += f"  [{', '.join(bad)}]"
            print(line)
            if r.notes:
                print(f"     note: {r.notes}")
        if args.scope == "curvature":
            print()
            print(_curvature_table(cat))
        print(f"\n{len(reports)} entries: {len(reports) - failed - warned} "
              f"passed, {warned} warned, {failed} failed")
    return 1 if failed else 0


def _curvature_table(cat: Catalog) -> str:
    lines = [f"{'entry':34s} {'metric':46s} {'R=0':>4s} {'Ric=0':>6s} "
             f"{'lambda':>10s}  X"]
    for row in cat.curvature_list():
        try:
            c = classify_row(row.algebra, row.metric, row.domain)
            flat = "Yes" if c.flat else "No"
            ricflat = "Yes" if c.ricci_flat else "No"
            if c.soliton is None:
                lam, xs = "", "No"
            else:
                lam = str(c.soliton.lam)
                xs = "(" + ",".join(str(v) for v in c.soliton.x) + ")"
        except RankAmbiguous as e:
            flat = ricflat = "?"
            lam, xs = "", f"branches on {e.poly!r}"
        metric = emit_sym_form(row.metric)
        lines.append(f"{row.entry_id:34s} {metric:46s} {flat:>4s} "
                     f"{ricflat:>6s} {lam:>10s}  {xs}")
    return "\n".join(lines)


def _resolve_geometry(args, cat: Catalog):
    if args.entry:
        if args.entry in cat.curvature_rows:
            row = cat.curvature_rows[args.entry]
            return row.algebra, row.metric, row.domain, args.entry
        if args.entry in cat.structures:
            st = cat.structures[args.entry]
            return (st.algebra, metric_from(st.omega, st.K, st.domain),
                    st.domain, args.entry)
        raise KeyError(f"no curvature row or structure named {args.entry!r}")
    if not (args.algebra is not None and args.metric):
        raise ParseError("geometry needs an entry id or --algebra/--metric")
    dom = ParamDomain.parse(args.domain)
    L = LieAlgebra4.parse(args.algebra, "inline", dom)
    return L, parse_sym_form(args.metric), dom, "inline"


def cmd_geometry(args) -> int:
    cat = load_catalog(check=False)
    L, h, dom, label = _resolve_geometry(args, cat)
    subst = {}
    for item in args.set:
        name, _, value = item.partition("=")
        subst[Param(name.strip())] = Scalar.const(Fraction(value.strip()))
    if subst:
        L = L.substitute(subst)
        h = h.substitute(subst)
        dom = _substitute_domain_lenient(dom, subst)
    out = {"entry": label, "algebra": L.serialize(),
           "metric": emit_sym_form(h)}
    try:
        conn = levi_civita(L, h, dom)
    except DegenerateError:
        out["error"] = "metric is degenerate"
        _emit_geometry(args, out)
        return 1
    out["nabla"] = {f"e{i+1}": _mat(conn.nabla[i]) for i in range(4)}
    r = curvature(L, conn)
    out["curvature"] = {f"R(e{i+1},e{j+1})": _mat(r[(i, j)])
                        for (i, j) in sorted(r.matrices)}
    ric = ricci(L, conn, dom)
    out["ric"] = _mat(ric)
    ric_op = ricci_operator(h, ric)
    out["Ric"] = _mat(ric_op)
    out["scalar_curvature"] = str(scalar_curvature(ric_op))
    out["flat"] = r.is_zero(dom)
    out["ricci_flat"] = ric.is_zero(dom)
    try:
        sol = solve_soliton(L, h, dom, ric)
        if sol is None:
            out["soliton"] = None
        else:
            out["soliton"] = {
                "lambda": str(sol.lam),
                "X": [str(v) for v in sol.x],
                "free_parameters": sol.free_count,
                "type": sol.type_tag(dom),
            }
    except RankAmbiguous as e:
        out["soliton"] = f"rank depends on parameters through {e.poly!r}"
    _emit_geometry(args, out)
    return 0


def _substitute_domain_lenient(dom: ParamDomain, subst) -> ParamDomain:
    """Apply an explicit assignment, dropping (with a warning) constraints
    it violates: `--set` deliberately explores outside a row's domain."""
    from .scalars import Constraint, _subst_poly
    kept = []
    for c in dom.constraints:
        s = _subst_poly(c.poly, subst)
        if s.is_const:
            if not c.holds(s.const_value()):
                print(f"note: assignment leaves the stated domain ({c!r})",
                      file=sys.stderr)
            continue
        if s.den.is_const:
            kept.append(Constraint(s.num, c.rel))
    return ParamDomain(kept, dom.radicals)


def _mat(m: Mat4):
    return [[str(v) for v in row] for row in m.rows]


def _emit_geometry(args, out: dict) -> None:
    if args.format == "json":
        print(json.dumps(out, indent=2))
        return
    print(f"entry:  {out['entry']}")
    print(f"algebra: {out['algebra']}")
    print(f"metric:  {out['metric']}")
    if "error" in out:
        print(f"error:  {out['error']}")
        return
    for name in ("nabla", "curvature"):
        for key, rows in out[name].items():
            print(f"{key} =")
            for row in rows:
                print("   [" + ", ".join(f"{v:>8s}" for v in row) + "]")
    print("ric =")
    for row in out["ric"]:
        print("   [" + ", ".join(f"{v:>8s}" for v in row) + "]")
    print("Ric =")
    for row in out["Ric"]:
        print("   [" + ", ".join(f"{v:>8s}" for v in row) + "]")
    print(f"scalar curvature = {out['scalar_curvature']}")
    print(f"flat = {out['flat']}, ricci flat = {out['ricci_flat']}")
    sol = out["soliton"]
    if sol is None:
        print("soliton: none")
    elif isinstance(sol, str):
        print(f"soliton: {sol}")
    else:
        print(f"soliton: lambda = {sol['lambda']}, X = ({', '.join(sol['X'])}), "
              f"{sol['free_parameters']} free parameter(s), {sol['type']}")


def cmd_phase(args) -> int:
    catalog = lsa_catalog()
    if args.base not in catalog:
        raise KeyError(f"unknown left-symmetric algebra {args.base!r}; "
                       f"choices: {', '.join(sorted(catalog))}")
    base = catalog[args.base]
    dual = LSA2.parse(args.dual or "trivial", "dual", offset=2)
    pair = LSAPair(base, dual, base.domain)
    L = assembled_brackets(pair)
    ok, defects = is_lie_extendible(pair)
    out = {
        "base": base.serialize(),
        "dual": dual.serialize(offset=2),
        "brackets": L.serialize(),
        "lie_extendible": ok,
    }
    if not ok:
        out["jacobi_residuals"] = {
            f"(e{i+1},e{j+1},e{k+1})": [str(c) for c in v]
            for (i, j, k), v in defects.items()
            if any(not c.is_zero for c in v)}
    else:
        from .notation import parse_endo, parse_two_form
        rep = validate_para_kahler(
            L, parse_two_form("e13+e24"), parse_endo("E11+E22-E33-E44"),
            pair.domain, "phase")
        out["normal_form_valid"] = rep.valid
        if not rep.valid:
            out["failing_checks"] = rep.failing()
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"base:     {out['base']}")
        print(f"dual:     {out['dual']}")
        print(f"brackets: {out['brackets']}")
        if not ok:
            print("FAIL: the pair is not Lie-extendible")
            for key, v in out["jacobi_residuals"].items():
                print(f"   jacobi{key} = ({', '.join(v)})")
        else:
            print("Lie-extendible: yes")
            print("normal-form structure valid:",
                  "PASS" if out["normal_form_valid"] else
                  f"FAIL {out['failing_checks']}")
    if not ok:
        return 1
    return 0 if out.get("normal_form_valid", True) else 1


def cmd_dump(args) -> int:
    cat = load_catalog(check=False)
    sys.stdout.write(cat.dump(args.entry))
    return 0


if __name__ == "__main__":
    sys.exit(main())
