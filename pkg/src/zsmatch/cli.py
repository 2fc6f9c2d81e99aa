"""Command line front end: ``zsmatch <command> [options]``.

Exit codes: 0 success, 1 validation failure, 2 enumeration cap exceeded,
3 input or parse error.  Inputs are JSON files or names from the shipped
corpus (``zsmatch corpus`` lists them).
"""

import argparse
import random
import sys

from . import __version__
from .errors import DegreeTooLarge, InputError, ValidationError
from .jsonio import corpus_names, dumps, load

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3


class Failure(Exception):
    """A computation that ran but found a violation (exit code 1)."""


def _need(kind, expected, what):
    if kind not in expected:
        raise InputError(f"{what} needs {' or '.join(expected)}, got {kind}")


def _groups_text(groups):
    return ", ".join(str(g) for g in groups)


# ---------------------------------------------------------------------------
# commands; each returns (json-able report, text lines)
# ---------------------------------------------------------------------------

def cmd_validate(args):
    from .matched_pair import is_left_cancellative, zs_category

    try:
        kind, obj, _raw = load(args.input)
    except ValidationError as exc:
        raise Failure(f"INVALID: {type(exc).__name__}: {exc}" +
                      (f"\nwitness: {exc.witness}" if exc.witness is not None else "")) from None
    rep = {"input": args.input, "kind": kind, "valid": True}
    lines = [f"{args.input}: valid {kind.replace('_', ' ')}"]
    if kind == "category":
        rep.update(objects=obj.n_objects, morphisms=obj.n_morphisms)
        lines.append(f"  {obj.n_objects} objects, {obj.n_morphisms} morphisms")
    elif kind == "matched_pair":
        Z = zs_category(obj)
        lc, w = is_left_cancellative(obj)
        rep.update(objects=obj.C.n_objects, C=obj.C.n_morphisms, D=obj.D.n_morphisms,
                   product=Z.n_morphisms, left_cancellative=lc,
                   left_cancellative_witness=list(w) if w else None)
        lines.append(f"  |C| = {obj.C.n_morphisms}, |D| = {obj.D.n_morphisms}, "
                     f"|C⋈D| = {Z.n_morphisms}, left cancellative: {'yes' if lc else 'no'}")
    elif kind == "graph":
        rep.update(vertices=len(obj.vertices), edges=len(obj.edges))
        lines.append(f"  {len(obj.vertices)} vertices, {len(obj.edges)} edges")
    return rep, lines


def _complex_for(kind, obj, which, K, cap):
    from .chain_maps import matched_complexes
    from .complexes import categorical_complex

    if kind == "category":
        if which != "categorical":
            raise InputError(f"a category only has the categorical complex, not {which!r}")
        return categorical_complex(obj, K, cap)
    mc = matched_complexes(obj, K, cap)
    return {"categorical": mc.bowtie, "diagonal": mc.diagonal, "total": mc.total}[which]


def cmd_homology(args):
    from .abelian import homology_groups

    kind, obj, _ = load(args.input)
    _need(kind, ("category", "matched_pair"), "homology")
    cx = _complex_for(kind, obj, args.which, args.max_degree, args.cap)
    groups = homology_groups(cx, args.max_degree)
    rep = {"input": args.input, "complex": args.which,
           "homology": [g.to_json(k) for k, g in enumerate(groups)]}
    lines = [f"{args.which} homology of {obj.name or args.input}"]
    lines += [f"  H_{k} = {g}" for k, g in enumerate(groups)]
    return rep, lines


def cmd_compare(args):
    from .chain_maps import compare_homology, eilenberg_zilber, matched_complexes, pi_map, psi_map

    kind, mp, _ = load(args.input)
    _need(kind, ("matched_pair",), "compare")
    K = args.max_degree
    rows = compare_homology(mp, K, args.cap)
    rep = {"input": args.input, "rows": [
        {**r, "bowtie": str(r["bowtie"]), "diagonal": str(r["diagonal"]), "total": str(r["total"])}
        for r in rows]}
    width = max([len(str(r[c])) for r in rows for c in ("bowtie", "diagonal", "total")] + [5])
    head = f"  k  {'H^⋈'.ljust(width)}  {'H^Δ'.ljust(width)}  {'H^Tot'.ljust(width)}  Π    Ψ    ∇    ∇ΨΠ=id"
    lines = [f"theories of {mp.name or args.input}", head]
    for r in rows:
        flags = ["iso " if r[f] else "NO  " for f in ("Pi_iso", "Psi_iso", "nabla_iso")]
        lines.append(f"  {r['degree']}  " + "  ".join(str(r[c]).ljust(width)
                                                      for c in ("bowtie", "diagonal", "total"))
                     + "  " + " ".join(flags) + " " + ("yes" if r["round_trip_identity"] else "NO"))
    if args.dump_map:
        mc = matched_complexes(mp, K, args.cap)
        maps = {f.name: f.to_json() for f in (pi_map(mc, K), psi_map(mc, K), eilenberg_zilber(mc, K))}
        with open(args.dump_map, "w", encoding="utf-8") as fh:
            fh.write(dumps(maps))
        lines.append(f"chain maps written to {args.dump_map}")
    ok = all(r["Pi_iso"] and r["Psi_iso"] and r["nabla_iso"] and r["round_trip_identity"]
             for r in rows)
    if not ok:
        rep["ok"] = False
        raise Failure("\n".join(lines + ["theories disagree"]))
    rep["ok"] = True
    return rep, lines


def cmd_spectral(args):
    from .complexes import DoubleComplex
    from .spectral import page2

    kind, mp, _ = load(args.input)
    _need(kind, ("matched_pair",), "spectral")
    K = args.max_degree
    P = page2(DoubleComplex(mp, K + 1, cap=args.cap), args.orientation, K)
    return {"input": args.input, **P.to_json()}, [P.to_text()]


def cmd_odometer(args):
    from .odometer import odometer_homology, verify_decomposition

    kind, E, _ = load(args.input)
    _need(kind, ("graph",), "odometer")
    r = odometer_homology(E, args.gcd_length)
    dec = verify_decomposition(E, args.cutoff, args.cap)
    ses = r["H1_ses"]
    rep = {
        "input": args.input,
        "H0": str(r["H0"]), "H2": str(r["H2"]),
        "H1": str(r["H1"]) if r["H1"] is not None else None,
        "H1_ses": {"sub": str(ses["sub"]), "quotient": str(ses["quotient"]), "split": ses["split"]},
        "gcd_criterion": r["gcd_criterion"],
        "strongly_connected": r["strongly_connected"],
        "euler_characteristic": r["euler_characteristic"],
        "decomposition": {"L": dec["L"], "checked": dec["checked"], "ok": dec["ok"]},
    }
    lines = [
        f"graph of odometers {E.name}: {len(E.vertices)} vertices, {len(E.edges)} edges, "
        f"χ = {E.euler_characteristic}",
        f"  H_0 = {r['H0']}",
        f"  H_1: 0 -> {ses['sub']} -> H_1 -> {ses['quotient']} -> 0, split: {ses['split']}",
    ]
    if r["H1"] is not None:
        lines.append(f"  H_1 = {r['H1']}")
    lines += [
        f"  H_2 = {r['H2']}",
        f"  gcd criterion: {r['gcd_criterion']['text']}",
        f"  decomposition check up to length {dec['L']}: "
        f"{'ok' if dec['ok'] else 'FAILED'} ({dec['checked']} paths)",
    ]
    if not dec["ok"]:
        raise Failure("\n".join(lines))
    return rep, lines


def _categorical_table(C, data):
    from .cocycle import categorical_cochain

    return categorical_cochain(C, [tuple(e) for e in data["cochain"]])


def cmd_cocycle(args):
    from .cocycle import (
        TotalCocycle,
        is_cohomologous,
        psi2,
        validate_categorical_2cocycle,
        validate_total_2cocycle,
    )
    from .matched_pair import zs_category

    kind, obj, _ = load(args.input)
    _need(kind, ("category", "matched_pair"), "cocycle")
    if not args.cochain:
        raise InputError("cocycle needs --cochain FILE")
    ckind, _c, cdata = load(args.cochain)
    _need(ckind, ("total_cochain", "categorical_cochain"), "--cochain")
    cat = zs_category(obj) if kind == "matched_pair" else obj
    lines, rep = [], {"input": args.input, "cochain": args.cochain, "action": args.action}

    if ckind == "total_cochain":
        if kind != "matched_pair":
            raise InputError("a total cochain needs a matched pair")
        phi = TotalCocycle.from_json(obj, cdata)
        v = validate_total_2cocycle(obj, phi, mode=args.mode, cap=args.cap)
        rep["total"] = {"ok": v["ok"], "mode": v["mode"], "other_mode_ok": v["other_mode_ok"],
                        "violations": [dict(x, witness=str(x["witness"])) for x in v["violations"][:20]]}
        lines.append(f"total 2-cocycle ({args.mode} conditions): {'valid' if v['ok'] else 'INVALID'}; "
                     f"{v['other_mode']} conditions: {'valid' if v['other_mode_ok'] else 'invalid'}")
        for x in v["violations"][:5]:
            lines.append(f"  {x['condition']} at {x['witness']}: off by {x['value']}")
        c = psi2(obj, phi, convention=args.mode)
        if args.action == "validate" and not v["ok"]:
            raise Failure("\n".join(lines))
    else:
        c = _categorical_table(cat, cdata)

    ids = cat.morphism_ids
    if args.action in ("transfer", "validate") and ckind == "total_cochain":
        rep["psi2"] = [[ids[i], ids[j], str(val)] for (i, j), val in sorted(c.items())]
        lines.append(f"Ψ² has {len(c)} nonzero values on {cat.name or 'the product'}")
    vc = validate_categorical_2cocycle(cat, c)
    rep["categorical_ok"] = vc["ok"]
    lines.append(f"categorical 2-cocycle: {'valid' if vc['ok'] else 'INVALID'}")
    for x in vc["violations"][:5]:
        lines.append(f"  {x['condition']} at {x['witness']}: off by {x['value']}")
    if args.action == "cohomologous":
        other = {}
        if args.other:
            okind, _o, odata = load(args.other)
            _need(okind, ("categorical_cochain",), "--other")
            other = _categorical_table(cat, odata)
        res = is_cohomologous(cat, other, c)
        rep["cohomologous"] = res["cohomologous"]
        rep["b"] = ({ids[f]: str(v) for f, v in sorted(res["b"].items()) if v}
                    if res["b"] is not None else None)
        target = args.other or "0"
        if res["cohomologous"]:
            lines.append(f"cohomologous to {target}; b = " +
                         (", ".join(f"{k}: {v}" for k, v in rep["b"].items()) or "0"))
        else:
            lines.append(f"not cohomologous to {target} (the system d b = c over Q/Z has no solution)")
    if not vc["ok"]:
        raise Failure("\n".join(lines))
    return rep, lines


def cmd_corpus(args):
    names = corpus_names()
    return {"corpus": names}, names


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest(args.seed, cutoff=args.cutoff)
    lines = [f"selftest seed={args.seed}"]
    lines += [f"  {r['name']}: {'pass' if r['ok'] else 'FAIL'} ({r['cases']} cases)" for r in results]
    rep = {"seed": args.seed, "results": results}
    if not all(r["ok"] for r in results):
        raise Failure("\n".join(lines))
    return rep, lines


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=3, metavar="K",
                        help="highest homology degree (default 3)")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default: $ZSMATCH_CAP or 5000000)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cutoff", type=int, default=4, metavar="L",
                        help="path-length cutoff for odometer oracles (default 4)")

    p = argparse.ArgumentParser(prog="zsmatch", description="Homology of matched pairs of finite categories.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a JSON description")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", parents=[common], help="homology groups of one complex")
    s.add_argument("input")
    s.add_argument("--which", choices=("categorical", "diagonal", "total"), default="categorical")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("compare", parents=[common], help="compare the three homology theories")
    s.add_argument("input")
    s.add_argument("--dump-map", metavar="FILE", help="write Π, Ψ, ∇ matrices as JSON")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("spectral", parents=[common], help="second page of a spectral sequence")
    s.add_argument("input")
    s.add_argument("--orientation", choices=("hv", "vh"), default="vh")
    s.set_defaults(func=cmd_spectral)

    s = sub.add_parser("odometer", parents=[common], help="closed-form homology of a graph of odometers")
    s.add_argument("input")
    s.add_argument("--gcd-length", type=int, default=6, help="parallel-path search length (default 6)")
    s.set_defaults(func=cmd_odometer)

    s = sub.add_parser("cocycle", parents=[common], help="2-cocycle checks, transfer and comparison")
    s.add_argument("input", help="category or matched pair")
    s.add_argument("--cochain", required=False, help="total or categorical cochain JSON")
    s.add_argument("--other", help="second categorical cochain for 'cohomologous' (default 0)")
    s.add_argument("--action", choices=("validate", "transfer", "cohomologous"), default="validate")
    s.add_argument("--mode", choices=("literal", "dual"), default="literal",
                   help="sign convention of the mixed total cocycle conditions")
    s.set_defaults(func=cmd_cocycle)

    s = sub.add_parser("corpus", parents=[common], help="list the shipped examples")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("selftest", parents=[common], help="seeded property checks")
    s.set_defaults(func=cmd_selftest)
    return p


def _emit(args, rep, lines, stream):
    if args.format == "json":
        stream.write(dumps(rep))
    else:
        stream.write("\n".join(lines) + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    if args.cap is not None and args.cap <= 0:
        parser.error("--cap must be positive")
    try:
        rep, lines = args.func(args)
    except Failure as exc:
        if args.format == "json":
            sys.stdout.write(dumps({"ok": False, "error": str(exc)}))
        else:
            sys.stdout.write(str(exc) + "\n")
        return EXIT_INVALID
    except ValidationError as exc:
        msg = f"INVALID: {type(exc).__name__}: {exc}"
        if exc.witness is not None:
            msg += f"\nwitness: {exc.witness}"
        sys.stdout.write((dumps({"ok": False, "error": msg}) if args.format == "json" else msg + "\n"))
        return EXIT_INVALID
    except DegreeTooLarge as exc:
        sys.stderr.write(f"zsmatch: cap exceeded: {exc}\n")
        return EXIT_CAP
    except InputError as exc:
        sys.stderr.write(f"zsmatch: {exc}\n")
        return EXIT_INPUT
    _emit(args, rep, lines, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

