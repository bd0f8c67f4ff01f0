"""Command line front end: fixed tables, property suites, tables from spec files.

Exit codes: 0 success, 1 fixture mismatch or property failure, 2 input error.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactla import Matrix, scalar_from_str, scalar_to_str
from .gtable import (
    GTableError,
    check_morphism,
    cotable,
    extract,
    product_from_structure,
    render,
    to_json_obj,
)
from .repkit import (
    GModule,
    S3_ELEMENTS,
    builtin_labeling,
    decompose_s3,
    decompose_sl2,
)

F = Fraction

SPEC_SCHEMA_HELP = """\
algebra spec file (JSON):
{
  "group": "SL2" | "S3" | "GLk",
  "k": <int, GLk only>,
  "dim": <int>,
  "basis_names": [<str>, ...],                # optional
  "action": {"E": [[...]], "H": [[...]], "F": [[...]]}   # SL2
            or {"()": ..., "(12)": ..., ...}             # S3 (all six)
            or {"E_11": ..., ...}                        # GLk (all E_pq)
  "product": [{"i": r, "j": c, "k": t, "c": "num/den"}, ...],
  "comultiplication": [{"i":..., "j":..., "k":..., "c":...}, ...],  # optional
  "summands": [{"id": s, "weight": n, "hwv": ["num/den", ...]}, ...]   # SL2
              or [{"id": s, "label": "tr|sg|std", "vectors": [[...]]}] # S3
}
Matrix entries and coefficients are exact rationals ("3/2", "-1", 2).
All action matrices must satisfy the group relations; they are validated on
load.  Without "summands" the decomposition is computed automatically.
"""


def _print(text):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_table(table, fmt):
    _print(render(table, fmt))


def _fmt_arg(p):
    p.add_argument("--format", choices=("text", "json", "latex"),
                   default="text", help="output format (default text)")


def _cmd_heisenberg(args):
    from .gallery import heisenberg_pipeline
    rep = heisenberg_pipeline()
    if args.what == "cup":
        _emit_table(rep.cup_table, args.format)
        return 0
    if args.what == "bracket":
        _emit_table(rep.bracket_table, args.format)
        return 0
    if args.format == "json":
        obj = {
            "dims": {"%d,%d" % pq: d for pq, d in sorted(rep.dims.items())},
            "total_even_dim": rep.total_even_dim,
            "verification": [
                {"summand": s, "property": name, "ok": ok}
                for (s, name, ok) in rep.verification],
            "cup": to_json_obj(rep.cup_table),
            "bracket": to_json_obj(rep.bracket_table),
        }
        _print(json.dumps(obj, indent=2))
        return 0
    lines = ["even cohomology of the Heisenberg algebra",
             "dims per bidegree:"]
    for pq, d in sorted(rep.dims.items()):
        lines.append("  H^{%d,%d}: %d" % (pq[0], pq[1], d))
    lines.append("total even dimension: %d" % rep.total_even_dim)
    lines.append("representative checks: %s"
                 % ("all passed" if rep.verified() else "FAILURES"))
    _print("\n".join(lines) + "\n")
    _print("cup product table:")
    _emit_table(rep.cup_table, args.format)
    _print("bracket table:")
    _emit_table(rep.bracket_table, args.format)
    return 0


def _cmd_gln(args):
    from .gallery import (find_isomorphism, gln_axioms, gln_sl2_tables,
                          gln_tables, heisenberg_pipeline)
    if args.what == "tables":
        tp, tb = gln_tables(args.n)
        _print("product table (n=%d):" % args.n)
        _emit_table(tp, args.format)
        _print("bracket table (n=%d):" % args.n)
        _emit_table(tb, args.format)
        return 0
    if args.what == "check":
        results = gln_axioms(args.n)
        for name, ok in results.items():
            _print("%s %s (n=%d, full basis)"
                   % ("PASS" if ok else "FAIL", name, args.n))
        return 0 if all(results.values()) else 1
    # iso
    if args.n != 3:
        sys.stderr.write("the isomorphism is built at n = 3\n")
        return 2
    rep = heisenberg_pipeline()
    gc, gb = gln_sl2_tables(3)
    f = find_isomorphism(rep.cup_table, rep.bracket_table, gc, gb)
    okb = check_morphism(rep.bracket_table, gb, f)
    okc = check_morphism(rep.cup_table, gc, f)
    if args.format == "json":
        _print(json.dumps({
            "map": f.to_json(),
            "bracket_morphism": okb,
            "product_morphism": okc,
            "invertible": f.invertible(),
        }, indent=2))
    else:
        _print("isomorphism with gl(3) |x gl(3)_ab:")
        for (x, r), c in sorted(f.entries.items(), key=lambda kv: kv[0][1]):
            _print("  %-11s -> %-5s  scale %s" % (r, x, scalar_to_str(c)))
        _print("bracket morphism: %s" % okb)
        _print("product morphism: %s" % okc)
        _print("invertible: %s" % f.invertible())
    return 0 if (okb and okc) else 1


def _cmd_s3(args):
    from .gallery import s3_fixture
    rep = s3_fixture()
    key = "table" if args.what == "table" else "cotable"
    _emit_table(rep.tables[key], args.format)
    return 0


def _cmd_matrix_algebra(args):
    from .gallery import mk_fixture
    rep = mk_fixture(args.k)
    _emit_table(rep.tables["table"], args.format)
    return 0


def _cmd_sl3(args):
    from .gallery import sl3_fixture
    rep = sl3_fixture()
    _emit_table(rep.tables["table"], args.format)
    return 0


def _cmd_poly(args):
    from .gallery import poly_fixture
    rep = poly_fixture(args.max_degree)
    _emit_table(rep.tables["table"], args.format)
    return 0


def _parse_matrix(rows, dim):
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError("action matrix is not %dx%d" % (dim, dim))
    return Matrix.from_rows(
        [[scalar_from_str(str(x)) for x in r] for r in rows])


def load_spec(path):
    with open(path) as fh:
        obj = json.load(fh)
    group = obj["group"]
    dim = obj["dim"]
    action = {op: _parse_matrix(rows, dim) for op, rows in obj["action"].items()}
    if group == "SL2":
        if set(action) != {"E", "H", "F"}:
            raise ValueError("SL2 spec needs exactly the operators E, H, F")
    elif group == "S3":
        if set(action) != set(S3_ELEMENTS):
            raise ValueError("S3 spec needs all six group elements")
    elif group == "GLk":
        k = obj.get("k")
        if not k or set(action) != {"E_%d%d" % (p, q)
                                    for p in range(1, k + 1)
                                    for q in range(1, k + 1)}:
            raise ValueError("GLk spec needs k and all E_pq operators")
    else:
        raise ValueError("unknown group %r" % group)
    module = GModule(group if group != "GLk" else "GLk", dim, action,
                     basis_names=obj.get("basis_names"))
    triples = [(e["i"], e["j"], e["k"], scalar_from_str(str(e["c"])))
               for e in obj["product"]]
    for (i, j, k2, _) in triples:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k2 < dim):
            raise ValueError("structure constant index out of range")
    delta = None
    if "comultiplication" in obj:
        delta = {}
        for e in obj["comultiplication"]:
            delta.setdefault(e["i"], []).append(
                (e["j"], e["k"], scalar_from_str(str(e["c"]))))
    return obj, module, triples, delta


def _cmd_extract(args):
    try:
        obj, module, triples, delta = load_spec(args.spec)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as e:
        sys.stderr.write("bad spec file: %s\n" % e)
        sys.stderr.write(SPEC_SCHEMA_HELP)
        return 2
    group = obj["group"]
    if group == "SL2":
        registry = builtin_labeling("SL2")
        hwvs = None
        if "summands" in obj:
            hwvs = [(s["id"], s["weight"],
                     [scalar_from_str(str(x)) for x in s["hwv"]])
                    for s in obj["summands"]]
        dec = decompose_sl2(module, registry, hwvs=hwvs)
    elif group == "S3":
        registry = builtin_labeling("S3")
        gens = None
        if "summands" in obj:
            gens = [(s["id"], s["label"],
                     [[scalar_from_str(str(x)) for x in v]
                      for v in s["vectors"]])
                    for s in obj["summands"]]
        dec = decompose_s3(module, registry, generators=gens)
    else:
        sys.stderr.write("extract supports SL2 and S3 spec files\n")
        return 2
    if args.cotable:
        if delta is None:
            sys.stderr.write("--cotable needs a comultiplication field\n")
            return 2
        table = cotable(delta, dec, registry)
    else:
        product = product_from_structure(module.dim, triples)
        table = extract(product, dec, registry)
    _emit_table(table, args.format)
    return 0


def _cmd_verify(args):
    from .verify import run_suites
    try:
        workers = int(os.environ.get("GTABLE_THREADS", "1"))
    except ValueError:
        workers = 1
    try:
        ok, lines = run_suites(module=args.module, max_workers=workers)
    except KeyError as e:
        sys.stderr.write("unknown module %s\n" % e)
        return 2
    for line in lines:
        _print(line)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gtables",
        description="equivariant multiplication tables, exactly over Q")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("heisenberg",
                       help="even Heisenberg cohomology tables and report")
    p.add_argument("what", nargs="?", choices=("cup", "bracket", "report"),
                   default="report")
    _fmt_arg(p)
    p.set_defaults(func=_cmd_heisenberg)

    p = sub.add_parser("gln", help="the gl(n) |x gl(n)_ab Poisson family")
    p.add_argument("what", nargs="?", choices=("tables", "check", "iso"),
                   default="tables")
    p.add_argument("--n", type=int, required=True)
    _fmt_arg(p)
    p.set_defaults(func=_cmd_gln)

    p = sub.add_parser("s3", help="K[S3] table and cotable")
    p.add_argument("what", nargs="?", choices=("table", "cotable"),
                   default="table")
    _fmt_arg(p)
    p.set_defaults(func=_cmd_s3)

    p = sub.add_parser("matrix-algebra", help="M_k under GL(k) conjugation")
    p.add_argument("--k", type=int, required=True)
    _fmt_arg(p)
    p.set_defaults(func=_cmd_matrix_algebra)

    p = sub.add_parser("sl3", help="sl(3) under the corner SL(2)")
    _fmt_arg(p)
    p.set_defaults(func=_cmd_sl3)

    p = sub.add_parser("poly", help="truncated polynomial algebra")
    p.add_argument("--max-degree", type=int, required=True)
    _fmt_arg(p)
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("extract", help="table of a user supplied algebra",
                       epilog=SPEC_SCHEMA_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--spec", required=True, help="JSON algebra description")
    p.add_argument("--cotable", action="store_true",
                   help="extract the dual product of the comultiplication")
    _fmt_arg(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--module", default=None,
                   help="restrict to one suite (exactla, supercochain, "
                        "gtable, gallery)")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GTableError as e:
        sys.stderr.write("%s: %s\n" % (type(e).__name__, e))
        return 1
    except Exception as e:  # gallery FixtureMismatch, NotFound, bad input
        from .gallery import FixtureMismatch, NotFound
        if isinstance(e, (FixtureMismatch, NotFound)):
            sys.stderr.write("%s: %s\n" % (type(e).__name__, e))
            return 1
        if isinstance(e, (ValueError, OSError)):
            sys.stderr.write("input error: %s\n" % e)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
