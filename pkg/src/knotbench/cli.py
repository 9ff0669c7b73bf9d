"""Command-line front end.

Subcommands: invariants, rho, sigfn, bdim, grope, magnus, table.
JSON (sorted keys) is the canonical output; --csv switches the tabular
commands.  Exit codes: 0 success, 1 malformed input, 2 precondition or
budget violation, 3 certified refinement ran out ("possibly singular").
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    BudgetExceededError,
    InputError,
    KnotbenchError,
    PossiblySingularError,
    PreconditionError,
)

EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_RESOURCE = 3


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _report(input_echo, results, warnings=()):
    return {
        "tool": {"name": "knotbench", "version": __version__},
        "input": input_echo,
        "results": results,
        "warnings": list(warnings),
    }


def _parse_precision(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except ValueError:
        try:
            f = Fraction(str(float(text)))
        except (ValueError, OverflowError):
            raise InputError(f"bad precision {text!r}") from None
    if f <= 0:
        raise InputError("precision must be positive")
    return f


def _load_knot(args):
    """Resolve --braid / --seifert / --input into (echo, SeifertMatrix)."""
    from .braids import parse_braid, seifert_matrix_from_braid
    from .seifert import SeifertMatrix, _entry_from_record

    sources = [s for s in (args.braid, args.seifert, args.input) if s]
    if len(sources) != 1:
        raise InputError("give exactly one of --braid, --seifert, --input")
    if args.braid:
        b = parse_braid(args.braid)
        return {"braid": str(b)}, seifert_matrix_from_braid(b)
    if args.seifert:
        try:
            rows = json.loads(args.seifert)
        except json.JSONDecodeError as e:
            raise InputError(f"bad Seifert JSON: {e.msg}") from None
        v = SeifertMatrix(rows)
        return {"seifert": [list(r) for r in v.rows]}, v
    with open(args.input, "r", encoding="utf-8") as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"{args.input}:{e.lineno}: {e.msg}") from None
    if "name" not in rec:
        rec = dict(rec, name=args.input)
    entry = _entry_from_record(rec, args.input)
    return {"file": args.input, "name": entry.name}, entry.seifert_matrix()


def _add_knot_args(p):
    p.add_argument("--braid", help='braid text, e.g. "n=2; 1 1 1"')
    p.add_argument("--seifert", help="Seifert matrix as a JSON array of rows")
    p.add_argument("--input", help="path to a knot spec JSON file")


def cmd_invariants(args) -> None:
    from .invariants import (
        alexander_polynomial,
        arf,
        d0,
        determinant,
        fibered_obstruction,
        fox_milnor_test,
        levine_tristram,
    )

    echo, v = _load_knot(args)
    delta = alexander_polynomial(v)
    fib = fibered_obstruction(v, args.claimed_genus)
    results = {
        "alexander": str(delta),
        "d0": d0(v),
        "determinant": determinant(v),
        "arf": arf(v),
        "signature_at_minus_1": levine_tristram(v, Fraction(1, 2)) if v.size else 0,
        "fibered_obstruction": {"passes": fib.passes, "reason": fib.reason},
        "fox_milnor": fox_milnor_test(delta),
        "surface_genus": v.genus,
    }
    _emit(_report(echo, results))


def cmd_rho(args) -> None:
    from .invariants import signature_csv, signature_function
    from .rho import rho0_from_step_function

    echo, v = _load_knot(args)
    precision = _parse_precision(args.precision)
    sf = signature_function(v)
    result = rho0_from_step_function(sf, precision)
    if args.csv:
        sys.stdout.write(signature_csv(sf, args.digits))
        return
    payload = result.to_json_dict(args.digits)
    payload["precision"] = str(precision)
    _emit(_report(echo, payload))


def cmd_sigfn(args) -> None:
    from .invariants import signature_csv, signature_function
    from .intervals import format_decimal

    echo, v = _load_knot(args)
    sf = signature_function(v)
    if args.csv:
        sys.stdout.write(signature_csv(sf, args.digits))
        return
    width = Fraction(1, 10 ** (args.digits + 2))
    jumps = []
    for a in sf.jumps:
        enc = a.enclosure_to_width(width)
        from .polynomials import poly_to_str
        jumps.append({
            "theta": format_decimal(enc.mid, args.digits),
            "min_poly_x": poly_to_str(a.poly),
        })
    _emit(_report(echo, {"jumps": jumps, "arc_values": list(sf.values)}))


def cmd_bdim(args) -> None:
    from .diagrams import GROPE_BUDGET, VASSILIEV_BUDGET, dim_graded_piece

    grading = args.grading
    budget = args.budget
    if budget is None:
        budget = GROPE_BUDGET if grading == "grope" else VASSILIEV_BUDGET
    start = 2 if grading == "grope" else 1
    rows = []
    for degree in range(start, args.max + 1):
        rows.append(dim_graded_piece(degree, grading, budget=budget))
    if args.csv or not args.json_out:
        lines = ["grading,degree,num_diagrams,num_relations,dimension"]
        for r in rows:
            lines.append(f"{r['grading']},{r['degree']},{r['num_diagrams']},"
                         f"{r['num_relations']},{r['dimension']}")
        sys.stdout.write("\n".join(lines) + "\n")
        return
    _emit(_report({"grading": grading, "max": args.max}, rows))


def cmd_grope(args) -> None:
    from .gropes import (
        GropeTree,
        bracket_to_grope,
        class_of,
        height_of,
        parse_bracket,
        weight,
    )

    if args.action == "from-bracket":
        if not args.bracket:
            raise InputError("from-bracket needs --bracket")
        b = parse_bracket(args.bracket)
        if b.is_generator:
            raise PreconditionError("weight-1 bracket carries no grope")
        tree = bracket_to_grope(b)
        h = height_of(tree)
        _emit(_report({"bracket": str(b)}, {
            "weight": weight(b),
            "class": class_of(tree),
            "height": None if h is None else str(h),
            "tree": tree.to_json_dict(),
        }))
        return
    if args.tree:
        text = args.tree
    elif args.tree_file:
        with open(args.tree_file, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("give --tree JSON or --tree-file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad grope JSON: {e.msg}") from None
    tree = GropeTree.from_json_dict(data)
    if args.action == "class":
        _emit(_report({"tree": tree.to_json_dict()}, {"class": class_of(tree)}))
    else:  # height
        h = height_of(tree)
        _emit(_report({"tree": tree.to_json_dict()},
                      {"height": None if h is None else str(h),
                       "is_symmetric_template": h is not None}))


def cmd_magnus(args) -> None:
    from .gropes import magnus_depth, parse_free_word

    w = parse_free_word(args.word)
    depth = magnus_depth(w, args.cutoff)
    _emit(_report({"word": str(w), "cutoff": args.cutoff}, {
        "depth": depth if depth is not None else f">= {args.cutoff}",
        "word_reduced": str(w),
    }))


def cmd_table(args) -> None:
    from .invariants import (
        alexander_polynomial,
        arf,
        d0,
        determinant,
        fox_milnor_test,
        levine_tristram,
    )
    from .seifert import load_knot_table

    entries = load_knot_table(args.path)
    rows = []
    n_mismatch = 0
    for entry in entries:
        v = entry.seifert_matrix()
        delta = alexander_polynomial(v)
        results = {
            "alexander": str(delta),
            "d0": d0(v),
            "determinant": determinant(v),
            "arf": arf(v),
            "signature_at_minus_1": levine_tristram(v, Fraction(1, 2)) if v.size else 0,
            "fox_milnor": fox_milnor_test(delta),
        }
        mismatches = []
        for key, want in entry.expected.items():
            if key in results and results[key] != want:
                mismatches.append({"invariant": key, "expected": want,
                                   "computed": results[key]})
        n_mismatch += len(mismatches)
        rows.append({"name": entry.name, "results": results,
                     "mismatches": mismatches})
    _emit(_report({"file": args.path, "entries": len(entries)},
                  {"knots": rows, "total_mismatches": n_mismatch}))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="knotbench",
        description="Exact knot invariants, rho-invariant integrals, "
                    "diagram algebra dimensions, and grope calculus.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--digits", type=int, default=12,
                       help="decimal digits for rendered angles (default 12)")
        p.add_argument("--csv", action="store_true", help="CSV output")
        p.add_argument("--json", dest="json_out", action="store_true",
                       default=True, help="JSON output (default)")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized property tests (unused here)")

    p = sub.add_parser("invariants", help="classical invariant report")
    _add_knot_args(p)
    p.add_argument("--claimed-genus", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("rho", help="certified rho0 enclosure")
    _add_knot_args(p)
    p.add_argument("--precision", default="1e-6",
                   help="enclosure width target (default 1e-6)")
    common(p)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("sigfn", help="signature step function")
    _add_knot_args(p)
    common(p)
    p.set_defaults(fn=cmd_sigfn)

    p = sub.add_parser("bdim", help="diagram algebra dimension table")
    p.add_argument("--grading", choices=("grope", "vassiliev"), default="grope")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_bdim)

    p = sub.add_parser("grope", help="grope class/height queries")
    p.add_argument("action", choices=("class", "height", "from-bracket"))
    p.add_argument("--tree", help="grope tree JSON")
    p.add_argument("--tree-file", help="path to grope tree JSON")
    p.add_argument("--bracket", help='bracket text, e.g. "[[x,y],z]"')
    common(p)
    p.set_defaults(fn=cmd_grope)

    p = sub.add_parser("magnus", help="lower-central depth via Magnus expansion")
    p.add_argument("word", help='free word, e.g. "x y x^-1 y^-1"')
    p.add_argument("--cutoff", type=int, default=8)
    common(p)
    p.set_defaults(fn=cmd_magnus)

    p = sub.add_parser("table", help="batch invariants over a knot table")
    p.add_argument("path")
    common(p)
    p.set_defaults(fn=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.fn(args)
    except InputError as e:
        sys.stderr.write(f"error: input: {e}\n")
        return EXIT_INPUT
    except (PreconditionError, BudgetExceededError) as e:
        sys.stderr.write(f"error: precondition: {e}\n")
        return EXIT_PRECONDITION
    except PossiblySingularError as e:
        sys.stderr.write(f"error: resource: {e}\n")
        return EXIT_RESOURCE
    except FileNotFoundError as e:
        sys.stderr.write(f"error: input: {e}\n")
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
