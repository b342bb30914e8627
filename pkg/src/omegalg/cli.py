"""Command line front end.

Exit status: 0 on success, 1 on usage errors (bad flags, unreadable
files), 2 when the kernel rejects the input.  Errors are written to
stderr as a single line starting with ``error:``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from .errors import OmegaError, ParseError
from .invariants import (GroupAction, gl2_character_series, invariant_hilbert_finite_group,
                         odd_branch_ratio, sl2_invariants_series, weitzenboeck_constants_series)
from .magma import LEX
from .polyring import (format_polynomial, groebner, ideal_membership,
                       infer_signature, parse_ordering, parse_polynomial_file, quotient_hilbert,
                       write_polynomial_file)
from .series import Series, estimate_exponent, lagrange_invert, solve_free_series
from .signature import parse_signature
from .subalgebra import free_gen_series, nielsen_reduce


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _partitions(text: str) -> list[tuple[int, int]]:
    """``l1:l2,...``; a bare ``n`` means ``(n, 0)``."""
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        try:
            out.append((int(a), int(b) if sep else 0))
        except ValueError:
            raise ParseError(f"bad partition {item!r}") from None
    return out


def _read_series(text: str) -> Series:
    return Series.from_json(text) if text.lstrip().startswith("{") else Series.from_csv(text)


def _emit_series(s: Series, fmt: str) -> str:
    return (s.to_json() + "\n") if fmt == "json" else s.to_csv()


def _emit_polys(polys, ordering, sig, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"sig": str(sig) if sig else None, "ord": ordering.child_rule,
                           "elements": [format_polynomial(f, ordering) for f in polys]}) + "\n"
    return write_polynomial_file(polys, ordering, sig)


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _load_polys(path: str, args):
    pf = parse_polynomial_file(_read(path))
    sig = parse_signature(args.sig) if getattr(args, "sig", None) else pf.sig
    if sig is None:
        sig = infer_signature(pf.polys)
    ordering = parse_ordering(args.ord) if getattr(args, "ord", None) else (pf.ordering or LEX)
    return pf, sig, ordering


# subcommands

def cmd_series_free(args):
    return _emit_series(solve_free_series(parse_signature(args.sig), args.trunc), args.format)


def cmd_series_exponent(args):
    h = solve_free_series(parse_signature(args.sig), args.trunc)
    est = estimate_exponent(h, args.method)
    if args.format == "json":
        return json.dumps({"method": est.method, "estimate": f"{est.estimate:.6f}",
                           "spread": f"{est.spread:.6f}", "window": list(est.window)}) + "\n"
    lo, hi = est.window
    return _table(["method", "estimate", "spread", "window_start", "window_end"],
                  [[est.method, f"{est.estimate:.6f}", f"{est.spread:.6f}", lo, hi]])


def cmd_series_lagrange(args):
    try:
        coeffs = [Fraction(c) for c in args.f.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient list {args.f!r}") from None
    f = Series(coeffs, trunc=max(args.trunc - 1, 0))
    return _emit_series(lagrange_invert(f, args.trunc), args.format)


def cmd_gb_compute(args):
    pf, sig, ordering = _load_polys(args.input, args)
    B = groebner(pf.polys, ordering, sig)
    return _emit_polys(B.elements, ordering, sig, args.format)


def cmd_gb_hilbert(args):
    pf, sig, ordering = _load_polys(args.input, args)
    weights = _int_list(args.weights) if args.weights else pf.weights
    B = groebner(pf.polys, ordering, sig)
    return _emit_series(quotient_hilbert(B, weights, args.trunc, sig), args.format)


def cmd_gb_member(args):
    pf, sig, ordering = _load_polys(args.input, args)
    B = groebner(pf.polys, ordering, sig)
    queries = parse_polynomial_file(_read(args.poly)).polys
    flags = [ideal_membership(f, B) for f in queries]
    if args.format == "json":
        return json.dumps(flags) + "\n"
    return _table(["index", "member"], [[i, str(b).lower()] for i, b in enumerate(flags, 1)])


def cmd_sub_nielsen(args):
    pf, sig, ordering = _load_polys(args.input, args)
    ys = nielsen_reduce(pf.polys, ordering, pf.weights)
    return _emit_polys(ys, ordering, sig, args.format)


def cmd_sub_gens_series(args):
    h = _read_series(_read(args.hilbert))
    return _emit_series(free_gen_series(h, parse_signature(args.sig)), args.format)


def cmd_inv_group(args):
    action = GroupAction.from_json(_read(args.action))
    h = invariant_hilbert_finite_group(action, parse_signature(args.sig), args.trunc)
    return _emit_series(h, args.format)


def cmd_inv_weitz(args):
    sig = parse_signature(args.sig)
    h = weitzenboeck_constants_series(sig, _int_list(args.cells), args.trunc)
    if args.free_gens:
        h = free_gen_series(h, sig)
    return _emit_series(h, args.format)


def cmd_inv_sl2(args):
    h = sl2_invariants_series(parse_signature(args.sig), _partitions(args.weights), args.trunc)
    return _emit_series(h, args.format)


def cmd_inv_schur(args):
    s = gl2_character_series(parse_signature(args.sig), _partitions(args.weights), args.trunc)
    if args.format == "json":
        return s.to_json() + "\n"
    rows = [[q, a, b, m] for q in range(1, s.trunc + 1)
            for (a, b), m in sorted(s[q].items(), reverse=True)]
    return _table(["degree", "l1", "l2", "multiplicity"], rows)


def cmd_inv_odd_ratio(args):
    r = odd_branch_ratio(args.k)
    if args.format == "json":
        return json.dumps({"k": args.k, "ratio": f"{r.numerator}/{r.denominator}"}) + "\n"
    return _table(["k", "numerator", "denominator"], [[args.k, r.numerator, r.denominator]])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="omegalg", description="Exact computations in free multioperator algebras.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group, name, func, help):
        sp = group.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        return sp

    def trunc(sp):
        sp.add_argument("--trunc", type=int, required=True, help="truncation degree")

    series = groups.add_parser("series", help="Hilbert series of free algebras").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = command(series, "free", cmd_series_free, "Hilbert series of the one-generated free algebra")
    sp.add_argument("--sig", required=True)
    trunc(sp)
    sp = command(series, "exponent", cmd_series_exponent, "numerical growth rate")
    sp.add_argument("--sig", required=True)
    trunc(sp)
    sp.add_argument("--method", choices=("root", "ratio"), default="ratio")
    sp = command(series, "lagrange", cmd_series_lagrange, "solve z f(z) = t for z")
    sp.add_argument("--f", required=True, help="coefficients of f, comma separated")
    trunc(sp)

    gb = groups.add_parser("gb", help="Groebner bases of ideals").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = command(gb, "compute", cmd_gb_compute, "reduced Groebner basis")
    sp.add_argument("--ord", choices=("lex", "rlex"))
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--sig")
    sp = command(gb, "hilbert", cmd_gb_hilbert, "Hilbert series of the quotient")
    sp.add_argument("--in", dest="input", required=True)
    trunc(sp)
    sp.add_argument("--ord", choices=("lex", "rlex"))
    sp.add_argument("--sig")
    sp.add_argument("--weights", help="positive weight per variable, comma separated")
    sp = command(gb, "member", cmd_gb_member, "ideal membership")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--ord", choices=("lex", "rlex"))
    sp.add_argument("--sig")

    sub = groups.add_parser("sub", help="subalgebras").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = command(sub, "nielsen", cmd_sub_nielsen, "free generators of a homogeneous subalgebra")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--ord", choices=("lex", "rlex"))
    sp = command(sub, "gens-series", cmd_sub_gens_series, "generating function of free generators")
    sp.add_argument("--hilbert", required=True, help="series file, CSV or JSON")
    sp.add_argument("--sig", required=True)

    inv = groups.add_parser("inv", help="invariant theory").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = command(inv, "group", cmd_inv_group, "invariants of a finite matrix group")
    sp.add_argument("--action", required=True, help="JSON file with d and generators")
    sp.add_argument("--sig", required=True)
    trunc(sp)
    sp = command(inv, "weitz", cmd_inv_weitz, "constants of a Weitzenboeck derivation")
    sp.add_argument("--sig", required=True)
    sp.add_argument("--cells", required=True, help="Jordan cell sizes, comma separated")
    trunc(sp)
    sp.add_argument("--free-gens", action="store_true",
                    help="print the series of free generators instead")
    sp = command(inv, "sl2", cmd_inv_sl2, "SL2-invariants")
    sp.add_argument("--sig", required=True)
    sp.add_argument("--weights", required=True, help="highest weights l1:l2, comma separated")
    trunc(sp)
    sp = command(inv, "schur", cmd_inv_schur, "GL2 decomposition of the components")
    sp.add_argument("--sig", required=True)
    sp.add_argument("--weights", required=True, help="highest weights l1:l2, comma separated")
    trunc(sp)
    sp = command(inv, "odd-ratio", cmd_inv_odd_ratio, "share of odd-branch binary trees")
    sp.add_argument("--k", type=int, required=True)
    return p


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except OmegaError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
