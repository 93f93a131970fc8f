"""Command-line entry point: ``permpatterns <subcommand> ...``.

Exit status is 0 on success, 1 when a verification finds a mismatch and 2 on
usage errors. Numbers are printed exactly (integers and reduced fractions).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from fractions import Fraction

from . import acceptance, bijections, genome, oracle, pegperm, series
from .perm import Permutation, gap_report, stats

FORMATS = ("text", "json", "csv", "bfile")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return _num(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    return oracle.default_workers()


def _perm_arg(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _patterns(values: list[str]) -> list[tuple]:
    try:
        return [tuple(Permutation.parse(v)) for v in values]
    except ValueError as e:
        raise UsageError(str(e))


# ------------------------------------------------------------------ rendering

def _render_sequence(rows: list[tuple[int, object]], fmt: str, meta: dict) -> str:
    if fmt == "bfile":
        return "".join(f"{n} {_num(v)}\n" for n, v in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in rows:
            w.writerow([n, _num(v)])
        return buf.getvalue()
    if fmt == "json":
        out = dict(meta)
        out["values"] = {str(n): _num(v) for n, v in rows}
        return json.dumps(_jsonable(out), indent=2, sort_keys=True) + "\n"
    head = "".join(f"# {k}: {v}\n" for k, v in meta.items())
    return head + "".join(f"{n}\t{_num(v)}\n" for n, v in rows)


def _render_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(record), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in record.items():
            w.writerow([k, json.dumps(_jsonable(v)) if isinstance(v, (list, dict, tuple)) else _num(v)])
        return buf.getvalue()
    if fmt == "bfile":
        raise UsageError("bfile output needs a sequence-valued subcommand")
    return "".join(f"{k}: {_jsonable(v)}\n" for k, v in record.items())


# ------------------------------------------------------------------ subcommands

def cmd_avoid(args) -> tuple[str, int]:
    basis = _patterns(args.basis)
    rows = []
    for n in range(1, args.max_n + 1):
        if args.involutions:
            rows.append((n, oracle.enumerate_involutions(basis, n)))
        else:
            rows.append((n, oracle.enumerate_class(basis, n, workers=_workers(args))))
    meta = {"basis": [" ".join(map(str, b)) for b in basis], "involutions": args.involutions}
    return _render_sequence(rows, args.format, meta), 0


def cmd_occur(args) -> tuple[str, int]:
    pattern = _patterns([args.pattern])[0]
    basis = _patterns(args.basis)
    rows = [(n, oracle.occurrence_totals(pattern, basis, n)) for n in range(1, args.max_n + 1)]
    meta = {"pattern": " ".join(map(str, pattern)), "basis": [" ".join(map(str, b)) for b in basis]}
    return _render_sequence(rows, args.format, meta), 0


def _polynomial_record(poly: pegperm.ClassPolynomial, max_n: int) -> dict:
    return {
        "gf_numerator": list(poly.gf.numerator),
        "gf_denominator": f"(1 - z)^{poly.gf.power}",
        "gf": str(poly.gf),
        "binomial_coefficients": list(poly.binomial_coeffs),
        "polynomial": str(poly),
        "threshold": poly.threshold,
        "exceptional_values": poly.exceptional_values,
        "counts": poly.counts(max_n),
    }


def _polyclass_output(poly: pegperm.ClassPolynomial, max_n: int, fmt: str, extra: dict) -> str:
    if fmt in ("bfile", "csv"):
        return _render_sequence(list(zip(range(1, max_n + 1), poly.counts(max_n))), fmt, {})
    record = dict(extra)
    record.update(_polynomial_record(poly, max_n))
    return _render_record(record, fmt)


def cmd_polyclass(args) -> tuple[str, int]:
    try:
        S = pegperm.read_pegset(args.pegfile)
    except OSError as e:
        raise UsageError(f"cannot read {args.pegfile}: {e.strerror}")
    except ValueError as e:
        raise UsageError(f"{args.pegfile}: {e}")
    if not S:
        raise UsageError(f"{args.pegfile}: no peg permutations found")
    result = pegperm.polyclass_enumerate(S)
    extra = {"pegs": [str(p) for p in S],
             "partition": [str(rc) for rc in result.partition] if len(result.partition) <= 200
             else f"{len(result.partition)} restricted classes"}
    return _polyclass_output(result.polynomial, args.max_n, args.format, extra), 0


def cmd_ball(args) -> tuple[str, int]:
    pegs = genome.ball_pegs(args.op, args.k)
    poly = pegperm.class_polynomial(pegs)
    status = 0
    extra = {"op": args.op, "k": args.k, "pegs": len(pegs)}
    if args.oracle_n:
        report = []
        for n in range(1, args.oracle_n + 1):
            bfs = genome.bfs_ball(args.op, args.k, n)
            value = poly.evaluate(n)
            report.append({"n": n, "bfs": bfs, "polynomial": value, "agree": bfs == value})
            if bfs != value:
                status = 1
        extra["oracle"] = report
    return _polyclass_output(poly, args.max_n, args.format, extra), status


def cmd_series(args) -> tuple[str, int]:
    try:
        s = series.catalog(args.name, args.order + 1)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    if not isinstance(s, series.TruncatedSeries) or isinstance(s.coeffs[0], series.Poly):
        raise UsageError(f"{args.name} is multivariate; only univariate series can be printed")
    rows = [(n, s.coeffs[n]) for n in range(args.order + 1)]
    if args.format == "text":
        return ",".join(_num(v) for _, v in rows) + "\n", 0
    return _render_sequence(rows, args.format, {"series": args.name}), 0


def cmd_biject(args) -> tuple[str, int]:
    if args.map not in bijections.BIJECTIONS:
        raise UsageError(f"unknown map {args.map!r}; choose from {', '.join(bijections.BIJECTIONS)}")
    fwd, inv = bijections.BIJECTIONS[args.map]
    text = args.input.strip()
    try:
        if set(text) <= {"u", "d"} and text:
            out = " ".join(map(str, inv(text)))
        else:
            out = fwd(Permutation.parse(text)).steps
    except ValueError as e:
        raise UsageError(str(e))
    if args.format == "json":
        return json.dumps({"map": args.map, "input": text, "output": out}, indent=2, sort_keys=True) + "\n", 0
    return out + "\n", 0


def cmd_stats(args) -> tuple[str, int]:
    p = args.perm
    record = asdict(stats(p))
    g = gap_report(p)
    record.update({k: v for k, v in asdict(g).items()})
    return _render_record(record, args.format), 0


def cmd_verify(args) -> tuple[str, int]:
    numbers = None
    if args.suite:
        try:
            numbers = sorted({int(x) for part in args.suite for x in part.split(",") if x})
        except ValueError:
            raise UsageError("--suite takes criterion numbers, e.g. --suite 1,3,7")
        unknown = [k for k in numbers if k not in acceptance.CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}; valid numbers are 1..12")
    results = acceptance.run(numbers, workers=_workers(args))
    if args.format == "json":
        body = [{"criterion": r.number, "title": r.title, "passed": r.passed,
                 "checks": r.checks, "failures": r.failures} for r in results]
        text = json.dumps(body, indent=2) + "\n"
    else:
        lines = []
        for r in results:
            lines.append(r.line())
            lines.extend(f"      {f}" for f in r.failures)
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} criteria passed")
        text = "\n".join(lines) + "\n"
    return text, 0 if all(r.passed for r in results) else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--workers", type=_positive,
                        help="worker processes (default: $PERMPATTERNS_WORKERS or CPU count)")

    p = _Parser(prog="permpatterns", description="Permutation-pattern enumeration toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    a = sub.add_parser("avoid", parents=[common], help="count a permutation class")
    a.add_argument("--basis", action="append", required=True, help="basis pattern, e.g. 1342 (repeatable)")
    a.add_argument("--max-n", type=_positive, default=8)
    a.add_argument("--involutions", action="store_true")
    a.set_defaults(func=cmd_avoid)

    o = sub.add_parser("occur", parents=[common], help="total pattern occurrences over a class")
    o.add_argument("--pattern", required=True)
    o.add_argument("--basis", action="append", required=True)
    o.add_argument("--max-n", type=_positive, default=7)
    o.set_defaults(func=cmd_occur)

    c = sub.add_parser("polyclass", parents=[common], help="enumerate the class of a peg-set file")
    c.add_argument("pegfile")
    c.add_argument("--max-n", type=_positive, default=10)
    c.set_defaults(func=cmd_polyclass)

    b = sub.add_parser("ball", parents=[common], help="permutations within k moves of the identity")
    b.add_argument("--op", choices=genome.KINDS, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--max-n", type=_positive, default=10)
    b.add_argument("--oracle-n", type=_positive)
    b.set_defaults(func=cmd_ball)

    s = sub.add_parser("series", parents=[common], help="coefficients of a catalogued series")
    s.add_argument("name")
    s.add_argument("--order", type=int, default=10, help="highest power printed")
    s.set_defaults(func=cmd_series)

    j = sub.add_parser("biject", parents=[common], help="apply a Dyck-path bijection or its inverse")
    j.add_argument("map")
    j.add_argument("input", help="a permutation, or a u/d path for the inverse")
    j.set_defaults(func=cmd_biject)

    t = sub.add_parser("stats", parents=[common], help="statistics of one permutation")
    t.add_argument("perm", type=_perm_arg)
    t.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--suite", action="append", help="comma-separated criterion numbers (default: all)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError(parser.format_usage())
        if getattr(args, "k", 0) is not None and getattr(args, "k", 0) < 0:
            raise UsageError("--k must be nonnegative")
        if args.workers:
            os.environ["PERMPATTERNS_WORKERS"] = str(args.workers)
        text, status = args.func(args)
    except UsageError as e:
        sys.stderr.write(str(e).rstrip("\n") + "\n")
        return 2
    except oracle.BudgetExceeded as e:
        sys.stderr.write(f"permpatterns: {e}\n")
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
