"""Command-line entry point: ``lattice-kissing <subcommand> ...``."""
from __future__ import annotations

import argparse
import os
import sys

from . import polytope as pt
from . import verify as vf
from .exact import format_rational, parse_rational
from .lattice import catalog_entry, catalog_names, is_packing_lattice, resolve_lattice
from .shells import EnumerationRefused, ShellQuery, enumerate_shell, kappa_star_alpha_certificate
from .structure import (
    check_equivalent_pairs,
    check_triple_double_count,
    find_collinear_quadruples,
    midpoint_triples,
    partition_mod2,
    solve_profile_system,
)
from .theta import ThetaSeries

# kissing numbers of the unit ball, used as the default triple bound per vector
KAPPA_BALL = {1: 2, 2: 6, 3: 12, 4: 24, 5: 40, 6: 72, 7: 126, 8: 240, 24: 196560}


def _out(doc) -> None:
    try:
        sys.stdout.write(vf.dumps(doc))
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())


def _lattice(args):
    c2 = parse_rational(args.scale) if args.scale else None
    return resolve_lattice(args.lattice, c2)


def _shell(args, mode):
    lat = _lattice(args)
    q = ShellQuery(lat, parse_rational(args.lo2), parse_rational(args.hi2), mode=mode)
    return lat, enumerate_shell(q, long=args.long, workers=args.workers)


def cmd_shell(args) -> int:
    lat, sh = _shell(args, "collect" if args.vectors else "count")
    doc = {"lattice": lat.label, "dim": lat.dim, "det": format_rational(lat.det)}
    doc.update(sh.to_json(include_vectors=args.vectors, pairs_only=args.pairs))
    if args.lo2 == "4":
        doc["certificate"] = kappa_star_alpha_certificate(lat, parse_rational(args.hi2), long=args.long,
                                                          workers=args.workers).to_json()
    _out(doc)
    return 0


def cmd_classes(args) -> int:
    lat, sh = _shell(args, "collect")
    part, prof = partition_mod2(sh)
    doc = {
        "lattice": lat.label,
        "hi2": format_rational(sh.query.hi2),
        "profile": prof.to_json(),
        "class_sizes": {"".join(map(str, k)): v for k, v in sorted(part.sizes().items())},
        "equivalent_pair_violations": len(check_equivalent_pairs(sh)),
        "collinear_lines": len(find_collinear_quadruples(sh)),
    }
    _out(doc)
    return 0


def cmd_triples(args) -> int:
    lat, sh = _shell(args, "collect")
    _, prof = partition_mod2(sh)
    kp = args.kappa_prev if args.kappa_prev is not None else KAPPA_BALL.get(lat.dim - 1)
    if kp is None:
        raise SystemExit(f"no default --kappa-prev for dimension {lat.dim}")
    rep = check_triple_double_count(prof, midpoint_triples(sh), kp)
    doc = {"lattice": lat.label, "hi2": format_rational(sh.query.hi2)}
    doc.update(rep.to_json())
    _out(doc)
    return 0 if rep.inequality_holds else 1


def cmd_profile_system(args) -> int:
    kp = args.kappa_prev if args.kappa_prev is not None else KAPPA_BALL.get(args.n - 1)
    if kp is None:
        raise SystemExit(f"no default --kappa-prev for n = {args.n}")
    budget = args.class_budget if args.class_budget is not None else 2**args.n - 1
    sols = solve_profile_system(args.n, kp, budget, args.target, strict=args.strict,
                                max_class_size=args.max_class_size)
    _out({"n": args.n, "kappa_prev": kp, "class_budget": budget, "target": args.target,
          "strict": args.strict, "solutions": [list(s) for s in sols]})
    return 0


def cmd_theta(args) -> int:
    ts = ThetaSeries(args.lattice, args.kmax)
    _out({"lattice": args.lattice, "coefficients": {str(2 * k): c for k, c in ts.coeffs.items()}})
    return 0


def cmd_polytope(args) -> int:
    if args.lp is not None:
        _out(pt.lp_ball_verdict(args.lp).to_json())
        return 0
    if args.lp_contacts:
        rep = pt.lp_contact_count()
        _out(rep.to_json())
        return 0 if rep.packing else 1
    if args.file:
        body = pt.load_polytope(args.file)
    elif args.name:
        body = pt.shipped(args.name)
    else:
        raise SystemExit("polytope needs --file, --name, --lp or --lp-contacts")
    r_in, r_out = pt.radii(body)
    doc = {"name": body.name, "vertices": len(body.vertices), "facets": len(body.halfspaces),
           "symmetric": body.symmetric, "r_in": r_in, "r_out": r_out, "ratio": r_out / r_in}
    if args.verdict:
        doc["certificate"] = pt.sandwich_verdict(body, difference_body_ok=args.difference_body).to_json()
    _out(doc)
    return 0


def cmd_catalog(args) -> int:
    rows = []
    for name in catalog_names():
        e = catalog_entry(name)
        rows.append({"name": name, "dim": e.dim, "det": format_rational(e.lattice.det),
                     "min_norm2": None if e.expected_min_norm2 is None else format_rational(e.expected_min_norm2),
                     "description": e.description})
    if args.check:
        for row in rows:
            lat = catalog_entry(row["name"]).lattice
            if lat.dim <= 8:
                row["enumerated_min_norm2"] = format_rational(is_packing_lattice(lat).min_norm2)
    _out({"lattices": rows, "polytopes": pt.shipped_names()})
    return 0


def cmd_verify(args) -> int:
    ids = vf.claim_ids() if args.claim == "all" else [args.claim]
    reps = [vf.verify(c, long=args.long) for c in ids]
    _out({"claims": [r.to_json(timings=args.timings) for r in reps], "pass": all(r.passed for r in reps)})
    return 0 if all(r.passed for r in reps) else 1


def cmd_report(args) -> int:
    reps = vf.verify_all(long=args.long)
    doc = vf.build_report(reps)
    if args.format == "json":
        _out(doc)
    else:
        sys.stdout.write(vf.report_markdown(doc))
    return 0 if doc["pass"] else 1


def _add_lattice_args(p):
    p.add_argument("--lattice", required=True, help="catalog name or path to a lattice JSON file")
    p.add_argument("--scale", help="multiply the Gram matrix by this rational (squared length factor)")
    p.add_argument("--lo2", default="4")
    p.add_argument("--hi2", required=True, help="upper norm^2 bound, e.g. 8 or 16/3")
    p.add_argument("--long", action="store_true", help="lift the enumeration size limits")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lattice-kissing", description="Generalized lattice kissing numbers.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("shell", help="count or list lattice vectors with lo2 <= |v|^2 <= hi2")
    _add_lattice_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", dest="vectors", action="store_false", help="histogram only (default)")
    mode.add_argument("--collect", "--vectors", dest="vectors", action="store_true", help="also list the vectors")
    p.add_argument("--pairs", action="store_true", help="with --collect, one vector per +-pair")
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("classes", help="mod-2 class profile of the shell")
    _add_lattice_args(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("triples", help="midpoint triples and their double count")
    _add_lattice_args(p)
    p.add_argument("--kappa-prev", type=int)
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("profile-system", help="integer solutions of the class-profile constraints")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa-prev", type=int)
    p.add_argument("--class-budget", type=int)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--max-class-size", type=int)
    p.set_defaults(func=cmd_profile_system)

    p = sub.add_parser("theta", help="theta coefficients of E8 or Leech")
    p.add_argument("--lattice", choices=["E8", "Leech"], required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("polytope", help="radii and sandwich certificate of a 3-d body")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--file")
    g.add_argument("--name", choices=pt.shipped_names())
    g.add_argument("--lp", type=float, metavar="P", help="l_p unit ball verdict")
    g.add_argument("--lp-contacts", action="store_true")
    p.add_argument("--verdict", action="store_true")
    p.add_argument("--difference-body", action="store_true", help="test (P - P)/2 when P is not symmetric")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("catalog", help="catalog operations")
    csub = p.add_subparsers(dest="catalog_cmd", required=True)
    pl = csub.add_parser("list")
    pl.add_argument("--check", action="store_true", help="also enumerate minimum norms (dim <= 8)")
    pl.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run the checks of one claim, or all")
    p.add_argument("claim", help="claim id or 'all'")
    p.add_argument("--long", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="verification summary with the two kissing-number tables")
    p.add_argument("--format", choices=["json", "markdown"], default="markdown")
    p.add_argument("--long", action="store_true")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KeyError, ValueError, EnumerationRefused, vf.ConfigError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
