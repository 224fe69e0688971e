"""``bulkpot`` command line.

Exit status is 0 on success and 1 on any failed check or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import UnknownSurface, catalog_lookup, surface_names
from .chains import end_coefficient_polynomial, enumerate_admissible
from .chainsolve import GenericityFailure, chain_bulk_solve
from .novikov import as_exponent
from .potential import assemble_resolution, milnor_potential, parse_bulk
from .report import classify, verify_appendix
from .solver import DegenerateSystem, gradient, solve_complex_system
from .toric import InteriorPoint, load_spec

ORDER_ENV = "BULKPOT_ORDER"


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _surface(name: str):
    """Catalog entry, or a polytope document when ``name`` is a file."""
    if os.path.isfile(name):
        return load_spec(name), None
    entry = catalog_lookup(name)
    return entry.spec, entry


def _point(args, entry):
    if args.u:
        return InteriorPoint.parse(args.u)
    if entry is None or entry.monotone_point is None:
        raise ValueError("--u is required for this surface")
    return entry.monotone_point


def _bulk(args, spec, entry):
    if args.bulk is None and entry is not None:
        return entry.bulk_spec()
    return parse_bulk(args.bulk, spec.nfacets)


def cmd_list_surfaces(args) -> int:
    rows = []
    for name in surface_names():
        e = catalog_lookup(name)
        rows.append({
            "name": name,
            "facets": e.spec.nfacets,
            "monotone_point": None if e.monotone_point is None else str(e.monotone_point),
            "bulk": e.bulk_text,
            "expected_count": e.expected_count,
            "region": e.region_text(),
            "segments": [s.label for s in e.segments],
        })
    lines = [
        f"{r['name']:<5} facets={r['facets']}  u={r['monotone_point']}  "
        f"bulk: {r['bulk'] or '-'}  expected={r['expected_count']}"
        for r in rows
    ]
    lines.append("An(n): parametric A_n chain resolution, n >= 1")
    _emit(args, "\n".join(lines), rows)
    return 0


def cmd_potential(args) -> int:
    spec, entry = _surface(args.surface)
    u = _point(args, entry)
    bulk = _bulk(args, spec, entry)
    alpha = tuple(as_exponent(a) for a in args.alpha.split(",")) if args.alpha else ()
    pot = assemble_resolution(spec, u, bulk, alpha)
    text = f"W = {pot.render()}"
    if pot.is_monotone():
        text += "\n(monotone: one energy level)"
    _emit(args, text, pot.to_json())
    return 0


def cmd_critical(args) -> int:
    spec, entry = _surface(args.surface)
    u = _point(args, entry)
    bulk = _bulk(args, spec, entry)
    order = args.order if args.order is not None else os.environ.get(ORDER_ENV)
    rep = classify(entry if entry is not None else spec, u, bulk, order=order, seed=args.seed)
    _emit(args, rep.render(), rep.to_json())
    if args.expect is not None and rep.nondegenerate_count != args.expect:
        print(f"expected {args.expect} nondegenerate points, found {rep.nondegenerate_count}",
              file=sys.stderr)
        return 1
    return 0


def cmd_admissible(args) -> int:
    tuples = enumerate_admissible(args.n, args.center)
    data = {"n": args.n, "center": args.center, "count": len(tuples),
            "tuples": [list(t) for t in tuples]}
    lines = [" ".join(map(str, t)) for t in tuples]
    lines.append(f"{len(tuples)} admissible tuples")
    if args.poly:
        if not 1 <= args.center <= args.n or args.n < 2:
            raise ValueError("--poly needs n >= 2 and 1 <= center <= n")
        p = end_coefficient_polynomial(args.n, args.center)
        text = p.render().replace("y1", "X").replace("y2", "Y")
        lines.append(f"P_{args.center}(X,Y) = {text}")
        data["polynomial"] = text
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_chain_solve(args) -> int:
    sol = chain_bulk_solve(args.n, seed=args.seed)
    lines = [f"A{args.n} chain, fiber sample y=({sol.y[0]:.6g}, {sol.y[1]:.6g}) seed {sol.seed}"]
    lines += [f"  (X, Y) = {r}" for r in sol.roots]
    _emit(args, "\n".join(lines), sol.to_json())
    return 0


def cmd_milnor(args) -> int:
    pot = milnor_potential(args.n, args.u or "1,1")
    lead = pot.leading()
    try:
        pts = solve_complex_system(*gradient(lead))
        status, ok = f"isolated critical points: {len(pts)}", False
    except DegenerateSystem:
        status, ok = "critical locus y2 = -y1 is positive-dimensional (degenerate)", True
    _emit(args, f"W = {pot.render()}\n{status}",
          {"n": args.n, "terms": pot.to_json()["terms"], "degenerate": ok})
    return 0 if ok else 1


def cmd_verify_appendix(args) -> int:
    rows = verify_appendix(workers=args.workers)
    data = [vars(r) for r in rows]
    _emit(args, "\n".join(map(str, rows)), data)
    return 0 if all(r.ok for r in rows) else 1


def cmd_parse_spec(args) -> int:
    spec = load_spec(args.file)
    lines = [f"{spec.name}: {spec.nfacets} facets, chains {list(map(list, spec.chains))}"]
    lines += [f"  {f.label or i}: {f.describe()}" for i, f in enumerate(spec.facets)]
    _emit(args, "\n".join(lines), spec.to_document())
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("paper", "json"), default="paper")
    p = argparse.ArgumentParser(prog="bulkpot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list-surfaces", parents=[fmt]).set_defaults(func=cmd_list_surfaces)

    s = sub.add_parser("potential", parents=[fmt])
    s.add_argument("surface", help="catalog name or polytope JSON file")
    s.add_argument("--u")
    s.add_argument("--bulk", help='e.g. "a4=sym", "a1=2,a5=pair:3", "zero"')
    s.add_argument("--alpha", help="comma-separated resolution parameters")
    s.set_defaults(func=cmd_potential)

    s = sub.add_parser("critical", parents=[fmt])
    s.add_argument("surface")
    s.add_argument("--u")
    s.add_argument("--bulk")
    s.add_argument("--order", help=f"lift to T^order (default from ${ORDER_ENV})")
    s.add_argument("--seed", type=int)
    s.add_argument("--expect", type=int, help="fail unless this many nondegenerate points")
    s.set_defaults(func=cmd_critical)

    s = sub.add_parser("admissible", parents=[fmt])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--center", type=int, required=True)
    s.add_argument("--poly", action="store_true")
    s.set_defaults(func=cmd_admissible)

    s = sub.add_parser("chain-solve", parents=[fmt])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_chain_solve)

    s = sub.add_parser("milnor", parents=[fmt])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--u")
    s.set_defaults(func=cmd_milnor)

    s = sub.add_parser("verify-appendix", parents=[fmt])
    s.add_argument("--workers", type=int, default=4)
    s.set_defaults(func=cmd_verify_appendix)

    s = sub.add_parser("parse-spec", parents=[fmt])
    s.add_argument("file")
    s.set_defaults(func=cmd_parse_spec)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UnknownSurface, ValueError, ArithmeticError, OSError) as exc:
        print(f"bulkpot: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
