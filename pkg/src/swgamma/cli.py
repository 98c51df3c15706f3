"""Command-line entry point: ``swgamma <subcommand> ...``."""

import argparse
import json
import os
import sys

from . import charzeta as cz
from . import steenrod, verify
from .errors import ResourceCapError, SwGammaError
from .gammagraded import filtration, standard_presentation
from .polycohom import PolyF2, mk_product, sw_virtual, theta_action, theta_direct
from .repcore import fs_indicator, load_group_file
from .swquotient import (bo_normal_form, c4_ideal_generators, c4_model, d4_ideal_generators, d4_model,
                         elem_abelian_generators, elem_abelian_model)
from .verify import SCHEMA, bo_relations

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload, text):
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2))
    else:
        print(text)


def _t_product(n):
    out = PolyF2.one(n)
    for i in range(n):
        out = out * PolyF2.var(i, n)
    return out


def _var_names(n):
    return [f"t{i + 1}" for i in range(n)]


# --- subcommands ---------------------------------------------------------------------

def cmd_theta(args):
    if args.n < 1:
        raise UsageError("theta needs n >= 1")
    op = steenrod.theta(args.n)
    if args.basis == "serre-cartan":
        sc = steenrod.to_serre_cartan(op)
        terms = [list(t) for t in sc.sorted_terms()]
        text = str(sc)
    else:
        terms = [list(t) for t in op.sorted_terms()]
        text = repr(op)
    _emit(args, {"n": args.n, "basis": args.basis, "degree": (1 << (args.n - 1)) - args.n, "terms": terms},
          text)
    return EXIT_OK


def cmd_key_identity(args):
    n = args.n
    if n < 1:
        raise UsageError("key-identity needs n >= 1")
    names = _var_names(n)
    lhs = theta_action(n, _t_product(n))
    direct = theta_direct(n)
    prod = mk_product(n)
    ok = lhs == direct == prod
    payload = {"n": n, "action": lhs.to_string(names), "power_sum": direct.to_string(names),
               "mk_product": prod.to_string(names), "verified": ok}
    text = "\n".join([f"theta_{n}(t1...t{n}) = {payload['action']}",
                      f"power sum         = {payload['power_sum']}",
                      f"prod m_k          = {payload['mk_product']}",
                      f"verdict: {'verified' if ok else 'failed'}"])
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def _read_json_arg(spec):
    if os.path.exists(spec):
        with open(spec) as fh:
            return json.load(fh)
    try:
        return json.loads(spec)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a JSON file or string: {exc}") from None


def cmd_sw_virtual(args):
    data = _read_json_arg(args.spec)
    try:
        nvars = int(data["nvars"])
        plus = [PolyF2(nvars, [1 << (16 * (i - 1)) for i in ell]) for ell in data.get("plus", [])]
        minus = [PolyF2(nvars, [1 << (16 * (i - 1)) for i in ell]) for ell in data.get("minus", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad sw-virtual description: {exc}") from None
    D = args.max_degree if args.max_degree is not None else int(data.get("max_degree", 8))
    try:
        w = sw_virtual(plus, minus, D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    names = _var_names(nvars)
    classes = [w.w(i).to_string(names) for i in range(D + 1)]
    text = "\n".join(f"w{i} = {c}" for i, c in enumerate(classes))
    _emit(args, {"nvars": nvars, "max_degree": D, "w": classes, "first_nonzero": w.first_nonzero()}, text)
    return EXIT_OK


def cmd_ideal(args):
    D = args.max_degree
    if args.model == "elem-abelian":
        if not args.rank or args.rank < 1:
            raise UsageError("ideal elem-abelian needs --rank r >= 1")
        model, gens, labels = elem_abelian_model(args.rank, max(D, 1)), elem_abelian_generators(args.rank), None
    elif args.model == "c4":
        model, gens, labels = c4_model(max(D, 1)), c4_ideal_generators(), ["x", "y"]
    else:
        model, gens, labels = d4_model(max(D, 1)), d4_ideal_generators(), ["W1", "W2", "W"]
    labels = labels or _var_names(model.algebra.nvars)
    dims = model.quotient_dims(D)
    degrees = []
    ok = True
    for n in range(D + 1):
        same = model.ideal(n) == model.ideal_generated_by(gens, n)
        ok &= same
        degrees.append({"degree": n, "model_dim": model.algebra.dim(n), "ideal_dim": model.ideal(n).rank,
                        "quotient_dim": dims[n], "generated": same})
    gen_text = [g.to_string(labels) for g in gens]
    payload = {"model": model.name, "max_degree": D, "generators": gen_text, "degrees": degrees, "verified": ok}
    lines = [f"model {model.name}; generators: {', '.join(gen_text) or '(none)'}",
             "n  dim  ideal  quotient  generated"]
    for d in degrees:
        lines.append(f"{d['degree']:<2} {d['model_dim']:<4} {d['ideal_dim']:<6} {d['quotient_dim']:<9} "
                     f"{'yes' if d['generated'] else 'no'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bo_relations(args):
    examples = {
        "w5(p1)": [(1, 5)], "w1(p1)w4(p1)": [(1, 1), (1, 4)],
        "w1(E)w2(F)^2": [(1, 1), (2, 2), (2, 2)], "w1(E)^3w2(F)": [(1, 1), (1, 1), (1, 1), (2, 2)],
    }
    forms = {}
    for name, mono in examples.items():
        nf = bo_normal_form(mono, 2)
        forms[name] = {"factors": [list(f) for f in nf.factors], "total_degree": nf.total_degree,
                       "variables": sorted(f"w{j}(p{i + 1})" for i, j in nf.variables)}
    verdicts = bo_relations()
    ok = all(verdicts.values())
    lines = [f"{k}: factors {v['factors']}, degree {v['total_degree']}, variables {' '.join(v['variables'])}"
             for k, v in forms.items()]
    lines += [f"{k}: {'verified' if v else 'failed'}" for k, v in verdicts.items()]
    _emit(args, {"normal_forms": forms, "verdicts": verdicts}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_group(args):
    table = load_group_file(args.file)
    table.validate()
    G = table.group
    indicators = [fs_indicator(table, i) for i in range(len(table.names))]
    payload = {"order": G.order, "exponent": G.exponent, "abelian": G.is_abelian,
               "classes": len(G.classes), "characters": list(table.names), "indicators": indicators,
               "valid": True}
    text = (f"valid group of order {G.order}, exponent {G.exponent}, {len(G.classes)} classes\n"
            f"characters: {' '.join(table.names)}\nindicators: {' '.join(map(str, indicators))}")
    _emit(args, payload, text)
    return EXIT_OK


def _group_arg(name):
    return load_group_file(name) if name.endswith(".json") else name


def cmd_gr_rep(args):
    field = {"R": "real", "C": "complex"}[args.field]
    filt = filtration(_group_arg(args.group), field)
    D = args.max_degree
    relations = None
    if isinstance(args.group, str) and not args.group.endswith(".json"):
        try:
            gens, rels = standard_presentation(args.group, field)
            relations = filt.check_presentation(gens, rels, D)
        except ValueError:
            relations = None
    degrees = []
    for n in range(1, D + 1):
        row = {"degree": n, "invariants": filt.piece(n).invariants}
        if args.mod2 or args.json:
            row["dim_mod2"] = filt.piece(n).dim_mod2
        if args.dec or args.json:
            row["dim_dec"] = filt.dec_part(n).rank
        if relations is not None:
            row["relations_ok"] = relations.degrees[n - 1].ok
        degrees.append(row)
    ok = relations is None or relations.ok
    payload = {"group": args.group, "field": args.field, "irreducibles": filt.ring.names, "degrees": degrees,
               "presentation": None if relations is None else relations.generators}
    lines = [f"{args.group} over {args.field}: irreducibles {' '.join(filt.ring.names)}"]
    for row in degrees:
        parts = [f"gr^{row['degree']} = " + (" + ".join(f"Z/{d}" if d else "Z" for d in row["invariants"]) or "0")]
        if args.mod2:
            parts.append(f"mod2 {row['dim_mod2']}")
        if args.dec:
            parts.append(f"dec {row['dim_dec']}")
        if "relations_ok" in row:
            parts.append("relations ok" if row["relations_ok"] else "relations FAILED")
        lines.append("; ".join(parts))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_omega(args):
    om = cz.omega(args.group, args.max_degree)
    degrees = []
    for n, d in om.degrees.items():
        degrees.append({"degree": n, "source_dim": d.source_dim, "target_dim": d.target_dim, "rank": d.rank,
                        "kernel_dim": len(d.kernel), "isomorphism": d.is_isomorphism,
                        "basis": [b.label for b in d.basis], "images": d.images})
    checks = {"chern classes": cz.omega_on_chern_classes(om),
              "multiplicative": cz.omega_multiplicative(om, min(args.max_degree, 6))}
    ok = all(checks.values())
    lines = [f"omega for {args.group}"]
    for d in degrees:
        lines.append(f"degree {d['degree']}: gr dim {d['source_dim']}, W/J dim {d['target_dim']}, "
                     f"kernel dim {d['kernel_dim']}{', isomorphism' if d['isomorphism'] else ''}")
    lines += [f"{k}: {'verified' if v else 'failed'}" for k, v in checks.items()]
    _emit(args, {"group": args.group, "degrees": degrees, "checks": checks}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_zeta(args):
    case = cz.get_case(args.case)
    rep = cz.zeta_case(case, args.max_degree)
    payload = {"case": case.case_id, "group": case.group, "description": case.description,
               "provenance": case.provenance, "dec_dims": rep.dec_dims, "reference_dims": rep.reference_dims,
               "dims_match": rep.dims_match, "surjective": rep.surjective,
               "injective_low_degrees": rep.injective_low, "isomorphism": rep.isomorphism}
    lines = [f"{case.case_id}: {case.description}",
             f"dec dims       {rep.dec_dims}",
             f"reference dims {rep.reference_dims}",
             f"surjective: {rep.surjective}; injective in degrees 1, 2: {rep.injective_low}; "
             f"isomorphism: {rep.isomorphism}",
             f"verdict: {'verified' if rep.ok else 'failed'}"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args):
    if args.list:
        rows = [{"id": c.claim_id, "anchor": c.anchor} for c in verify.CLAIMS]
        _emit(args, {"claims": rows}, "\n".join(f"{r['id']}: {r['anchor']}" for r in rows))
        return EXIT_OK
    if not args.target:
        raise UsageError("verify needs a claim id, 'all', or --list")
    if args.target != "all" and args.target not in verify.CLAIM_IDS:
        raise UsageError(f"unknown claim {args.target!r}; see verify --list")
    report = verify.verify(args.target, args.max_degree)
    if args.json:
        print(report.dumps(timing=not args.no_timing))
    else:
        print(report.text())
    if report.ok:
        return EXIT_OK
    return EXIT_CAP if report.capped and all(r.status != "failed" for r in report.results) else EXIT_FAIL


# --- parser ----------------------------------------------------------------------------

def _degree(value):
    d = int(value)
    if d < 0:
        raise argparse.ArgumentTypeError("degree must be >= 0")
    return d


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON with a schema version")
    common.add_argument("--cap-degree", type=_degree, help="Steenrod algebra degree cap")

    p = argparse.ArgumentParser(prog="swgamma", description="Steenrod operations, canonical ideals and "
                                "gamma-filtered representation rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("theta", parents=[common], help="the operation theta_n")
    s.add_argument("n", type=int)
    s.add_argument("--basis", choices=["milnor", "serre-cartan"], default="serre-cartan")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("key-identity", parents=[common], help="theta_n on t1...tn three ways")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_key_identity)

    s = sub.add_parser("sw-virtual", parents=[common],
                       help='SW classes of a virtual sum of lines: {"nvars": r, "plus": [[1,2]], "minus": [[3]]}')
    s.add_argument("spec", help="JSON string or file; lines are lists of 1-based variable indices")
    s.add_argument("--max-degree", type=_degree)
    s.set_defaults(func=cmd_sw_virtual)

    s = sub.add_parser("ideal", parents=[common], help="the theta-kernel ideal in a model")
    s.add_argument("model", choices=["elem-abelian", "c4", "d4"])
    s.add_argument("--rank", type=int)
    s.add_argument("--max-degree", type=_degree, default=8)
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("bo-relations", parents=[common], help="normal forms in the BO quotient")
    s.set_defaults(func=cmd_bo_relations)

    s = sub.add_parser("group", parents=[common], help="group files")
    s.add_argument("action", choices=["validate"])
    s.add_argument("file")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("gr-rep", parents=[common], help="graded gamma-filtered representation ring")
    s.add_argument("group", help="catalog name (C4, elem_abelian2(2), z4pow(2), D4) or a .json group file")
    s.add_argument("--field", choices=["R", "C"], default="R")
    s.add_argument("--max-degree", type=_degree, default=6)
    s.add_argument("--mod2", action="store_true")
    s.add_argument("--dec", action="store_true")
    s.set_defaults(func=cmd_gr_rep)

    s = sub.add_parser("omega", parents=[common], help="the character omega")
    s.add_argument("group")
    s.add_argument("--max-degree", type=_degree, default=6)
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("zeta", parents=[common], help="compare k_* with the decomposable part")
    s.add_argument("case", help=f"one of {', '.join(cz.CASES)}")
    s.add_argument("--max-degree", type=_degree, default=6)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("verify", parents=[common], help="run registered claims")
    s.add_argument("target", nargs="?", help="claim id or 'all'")
    s.add_argument("--list", action="store_true")
    s.add_argument("--max-degree", type=_degree, default=6)
    s.add_argument("--no-timing", action="store_true", help="omit elapsed times from JSON")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    old_cap = steenrod.get_cap_degree()
    try:
        if args.cap_degree is not None:
            steenrod.set_cap_degree(args.cap_degree)
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SwGammaError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        steenrod.set_cap_degree(old_cap)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
