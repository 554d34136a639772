"""Command-line surface.

Subcommands: ih, params, tables, decomp, ecpoly, ec, strata, tate,
hodge, holo, catalog.  Exit codes: 0 success, 1 golden mismatch,
2 unrecognized motive, 3 invalid input, 4 catalog exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arthur, ihtab, spchar, strata
from .catalog import Catalog
from .errors import CatalogExhausted, GoldenMismatch, ParseError, SatakeError, Unrecognized
from .gkring import GKElem
from .spin import contribution

EXIT_OK = 0
EXIT_GOLDEN = 1
EXIT_UNRECOGNIZED = 2
EXIT_INVALID = 3
EXIT_EXHAUSTED = 4


class _Invalid(Exception):
    pass


def _parse_lambda(text: str, g: int) -> tuple:
    parts = [p for p in text.split(",") if p != ""]
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise _Invalid("bad weight %r" % text) from exc
    if vals == [0]:
        vals = []
    if len(vals) > g:
        raise _Invalid("weight %r has more than g=%d entries" % (text, g))
    lam = tuple(vals) + (0,) * (g - len(vals))
    if any(lam[i] < lam[i + 1] for i in range(g - 1)) or (lam and lam[-1] < 0):
        raise _Invalid("weight %r is not dominant" % (text,))
    return lam


def _load_catalog(args) -> Catalog | None:
    path = getattr(args, "catalog", None)
    if path:
        return Catalog.from_config_file(path, getattr(args, "max_weight", 24) or 24)
    return None


def _cmd_ih(args, out):
    lam = _parse_lambda(args.lam, args.g)
    graded = ihtab.ih(args.g, lam, args.max_weight, _load_catalog(args))
    if args.degree is not None:
        out.write(graded.degree(args.degree).render() + "\n")
        return EXIT_OK
    for k in graded.degrees():
        out.write("IH^%d: %s\n" % (k, graded.degree(k).render()))
    return EXIT_OK


def _cmd_params(args, out):
    lam = _parse_lambda(args.lam, args.g)
    params = arthur.enumerate_parameters(args.g, lam, args.max_weight, _load_catalog(args))
    for psi in params:
        ks = "+".join(str(b.k_value) for b in psi.display_blocks())
        out.write(
            "%s  k=%s  min_degree=%d\n" % (psi.render(), ks, arthur.min_degree(psi, args.g))
        )
    return EXIT_OK


def _cmd_tables(args, out):
    rows = ihtab.table_rows(args.max_weight, _load_catalog(args))
    if args.golden:
        report = ihtab.golden_diff(rows, args.golden)
        out.write(report.describe() + "\n")
        if not report.ok:
            raise GoldenMismatch(report.describe())
        return EXIT_OK
    if args.format == "csv":
        out.write(ihtab.rows_to_csv(rows))
    elif args.format == "jsonl":
        for row in rows:
            rec = dict(zip(ihtab.GOLDEN_COLUMNS, row.as_tuple()))
            out.write(json.dumps(rec) + "\n")
    else:
        for row in rows:
            t = row.as_tuple()
            out.write("%-2s g=%-2s lambda=(%s) %s: %s%s\n" % (
                t[0], t[1], t[2], t[3], t[4], ("  [%s]" % t[5]) if t[5] else ""
            ))
    return EXIT_OK


def _cmd_decomp(args, out):
    try:
        wedges = [int(p) for p in args.wedges.split(",")]
    except ValueError as exc:
        raise _Invalid("bad wedge list %r" % args.wedges) from exc
    g = args.g
    total = None
    for i in wedges:
        if not 0 <= i <= 2 * g:
            raise _Invalid("wedge %d outside [0, %d]" % (i, 2 * g))
        factor = spchar.GradedChar.from_items(
            g, 1, [(w, (0,), c) for w, c in spchar._wedge_char_items(g, i)]
        )
        total = factor if total is None else total * factor
    if total is None:
        raise _Invalid("empty wedge list")
    weight = sum(wedges)
    polys: dict = {}
    for _extras, char in total.slices().items():
        for lam, mult in spchar.decompose(char).items():
            m = (weight - sum(lam)) // 2
            polys.setdefault(lam, {})[m] = mult
    for lam in sorted(polys, reverse=True):
        out.write(
            "%s: %s\n" % (",".join(map(str, lam)), spchar.poly_str(polys[lam]))
        )
    return EXIT_OK


def _cmd_ecpoly(args, out):
    lam = _parse_lambda(args.lam, args.g)
    out.write(spchar.poly_str(spchar.ec_mult_poly(args.g, args.s, lam)) + "\n")
    return EXIT_OK


def _cmd_ec(args, out):
    elem = strata.ec_interior_mod_tate(args.g, args.s)
    out.write(_factored(elem) + "\n")
    return EXIT_OK


def _factored(elem: GKElem) -> str:
    """Render c(L)*S<18> elements as a factored polynomial string."""
    poly = {}
    for (sym, t), c in elem.terms.items():
        if sym.name != "S<18>":
            return elem.render()
        poly[t] = c
    if not poly:
        return "0"
    return "(%s) * S<18>" % spchar.poly_str(poly)


def _cmd_strata(args, out):
    s = args.s
    for stab, affs in (("trivial", range(0, 2)), ("order2", (0, 1))):
        for aff in affs:
            st = strata.Rank1Stratum(3, s, aff, stab)
            out.write(
                "%s dim_aff=%d (torus rank %d): %s\n"
                % (stab, aff, st.torus_rank, _factored(strata.stratum_ec_rank1(st)))
            )
    witness = strata.nontate_witness(s)
    out.write(witness.describe() + "\n")
    return EXIT_OK


def _cmd_tate(args, out):
    fn = strata.is_tate_compactified if args.compactified else strata.is_tate_interior
    out.write(("tate" if fn(args.g, args.s) else "not tate") + "\n")
    return EXIT_OK


def _cmd_hodge(args, out):
    lam = _parse_lambda(args.lam, args.g)
    graded = ihtab.ih(args.g, lam, args.max_weight, _load_catalog(args))
    elem = graded.degree(args.degree) if args.degree is not None else graded.total()
    for (p, q), c in sorted(ihtab.hodge_bidegrees(elem).items()):
        out.write("(%d,%d) x%d\n" % (p, q, c))
    return EXIT_OK


def _cmd_holo(args, out):
    out.write(ihtab.holomorphic_query(args.g, args.s, args.k) + "\n")
    return EXIT_OK


def _cmd_catalog(args, out):
    catalog = _load_catalog(args) or arthur.default_catalog(args.max_weight)
    for c, allowed in catalog.constituents_up_to(args.max_weight):
        d_str = "all odd" if allowed == "all" else ",".join(map(str, allowed))
        out.write(
            "%-24s n=%d %-11s mult=%d d in {%s}\n" % (c.name, c.n, c.parity, c.mult, d_str)
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satake")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, lam=False, g=False, s=False, degree=False, weight=False,
            catalog=False, **extra):
        p = sub.add_parser(name)
        if g:
            p.add_argument("--g", type=int, required=True)
        if lam:
            p.add_argument("--lambda", dest="lam", type=str, required=True, metavar="LAMBDA")
        if s:
            p.add_argument("--s", type=int, required=True)
        if degree:
            p.add_argument("--degree", type=int, default=None)
        if weight:
            p.add_argument("--max-weight", type=int, default=23)
        if catalog:
            p.add_argument("--catalog", type=str, default=None)
        for flag, kwargs in extra.items():
            p.add_argument("--" + flag.replace("_", "-"), **kwargs)
        p.set_defaults(fn=fn)
        return p

    add("ih", _cmd_ih, g=True, lam=True, degree=True, weight=True, catalog=True)
    add("params", _cmd_params, g=True, lam=True, weight=True, catalog=True)
    add("tables", _cmd_tables, weight=True, catalog=True,
        golden=dict(type=str, default=None),
        format=dict(type=str, default="text", choices=("text", "csv", "jsonl")))
    add("decomp", _cmd_decomp, g=True, wedges=dict(type=str, required=True))
    add("ecpoly", _cmd_ecpoly, g=True, s=True, lam=True)
    add("ec", _cmd_ec, g=True, s=True)
    add("strata", _cmd_strata, s=True)
    add("tate", _cmd_tate, g=True, s=True, compactified=dict(action="store_true"))
    add("hodge", _cmd_hodge, g=True, lam=True, degree=True, weight=True, catalog=True)
    add("holo", _cmd_holo, g=True, s=True, k=dict(type=int, required=True))
    add("catalog", _cmd_catalog, weight=True, catalog=True)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except _Invalid as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except GoldenMismatch:
        return EXIT_GOLDEN
    except Unrecognized as exc:
        print("error: %s (%d-element residue)" % (exc, len(exc.residue)), file=sys.stderr)
        return EXIT_UNRECOGNIZED
    except CatalogExhausted as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_EXHAUSTED
    except (ParseError, ValueError, SatakeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
