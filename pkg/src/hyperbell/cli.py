"""Command-line front end.

Exit codes: 0 success / match, 1 verification failure or mismatch,
2 usage error (including the --max-bits guard), 3 I/O or network error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import analytic, oeis_io, powerseries, sequences

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

FORMATS = ("plain", "csv", "json", "bfile")


class UsageError(Exception):
    pass


class ResourceLimit(UsageError):
    pass


# -- rendering ----------------------------------------------------------------


def render_sequence(values: Sequence[int], fmt: str, offset: int = 0) -> str:
    if fmt == "plain":
        return " ".join(str(v) for v in values) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value"])
        w.writerows((offset + i, str(v)) for i, v in enumerate(values))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([str(v) for v in values]) + "\n"
    return oeis_io.emit_bfile(values, offset)


def render_triangle(rows: Sequence[Sequence[int]], fmt: str, first_row: int = 1) -> str:
    """Rows of S(n, 1..n); bfile flattens them in reading order from index 1."""
    if fmt == "plain":
        return "".join(" ".join(str(v) for v in row) + "\n" for row in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "l", "value"])
        for n, row in enumerate(rows, first_row):
            w.writerows((n, l, str(v)) for l, v in enumerate(row, 1))
        return buf.getvalue()
    if fmt == "json":
        objs = [{"n": n, "values": [str(v) for v in row]} for n, row in enumerate(rows, first_row)]
        return json.dumps(objs) + "\n"
    return oeis_io.emit_bfile([v for row in rows for v in row], 1)


def render_report(report: dict, fmt: str, plain_text: str, seq: Sequence[int] = (), offset: int = 0) -> str:
    """Key/value report; ``seq`` is what bfile output carries."""
    if fmt == "plain":
        return plain_text
    if fmt == "bfile":
        return oeis_io.emit_bfile(seq, offset)
    flat = {k: _jsonable(v) for k, v in report.items()}
    if fmt == "json":
        return json.dumps(flat, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(flat):
        v = flat[k]
        w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# -- helpers ------------------------------------------------------------------


def _guard(values, max_bits: int | None) -> None:
    if max_bits is None:
        return
    for v in values:
        if abs(v).bit_length() > max_bits:
            raise ResourceLimit(f"value exceeds --max-bits={max_bits}")


def _grow(fn, n_range, max_bits):
    """Evaluate fn over n_range, stopping as soon as a value breaks the guard."""
    out = []
    for n in n_range:
        v = fn(n)
        _guard([v], max_bits)
        out.append(v)
    return out


def _params(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--params must be comma-separated positive ints: {text!r}")
    if any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("--params entries must be >= 1")
    return vals


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational or decimal, got {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


# -- commands -----------------------------------------------------------------


def cmd_bell(args) -> tuple[str, int]:
    vals = _grow(lambda n: sequences.extended_bell(args.L, n), range(args.n_max + 1), args.max_bits)
    return render_sequence(vals, args.format), EXIT_OK


def cmd_stirling(args) -> tuple[str, int]:
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1 for the Stirling triangle")
    rows = []
    for n in range(1, args.n_max + 1):
        row = [sequences.stirling_ext(args.L, n, l) for l in range(1, n + 1)]
        _guard(row, args.max_bits)
        rows.append(row)
    return render_triangle(rows, args.format), EXIT_OK


def cmd_restricted(args) -> tuple[str, int]:
    vals = _grow(
        lambda n: sequences.restricted_bell(args.L, args.p, n), range(args.n_max + 1), args.max_bits
    )
    return render_sequence(vals, args.format), EXIT_OK


def _supra_values(args) -> tuple[list[int], int]:
    """S_L(n+p, n) from n = 1 (n = 0 as well when p = 0); returns (values, first n)."""
    if args.p > 3:
        raise UsageError("closed forms exist only for --p 0..3")
    first = 0 if args.p == 0 else 1
    vals = _grow(
        lambda n: sequences.supra_diagonal(args.L, args.p, n),
        range(first, args.n_max + 1),
        args.max_bits,
    )
    return vals, first


def cmd_supra(args) -> tuple[str, int]:
    vals, first = _supra_values(args)
    return render_sequence(vals, args.format, first), EXIT_OK


def cmd_oracle(args) -> tuple[str, int]:
    N = args.order
    kind = args.kind
    try:
        if kind == "general":
            _require(args, "params")
            spec = powerseries.HypergeomSpec(args.params)
            oracle = powerseries.hypergeom_exp_sequence(spec, N)
            recursion = (
                [sequences.extended_bell(spec.L, n) for n in range(N + 1)]
                if all(k == 1 for k in spec.params)
                else None
            )
        elif kind == "bell":
            _require(args, "L")
            oracle = powerseries.oracle_bell(args.L, N)
            recursion = [sequences.extended_bell(args.L, n) for n in range(N + 1)]
        elif kind == "stirling":
            _require(args, "L", "l")
            oracle = powerseries.oracle_stirling(args.L, args.l, N)
            recursion = [sequences.stirling_ext(args.L, n, args.l) for n in range(N + 1)]
        else:
            _require(args, "L", "p")
            oracle = powerseries.oracle_restricted(args.L, args.p, N)
            recursion = [sequences.restricted_bell(args.L, args.p, n) for n in range(N + 1)]
    except powerseries.IntegralityViolation as exc:
        report = {"kind": kind, "status": "integrality-violation", "index": exc.index,
                  "value": str(exc.value)}
        text = f"INTEGRALITY VIOLATION at n={exc.index}: {exc.value}\n"
        return render_report(report, args.format, text), EXIT_FAIL
    _guard(oracle, args.max_bits)

    report = {"kind": kind, "order": N, "oracle": oracle}
    if recursion is None:
        report.update(status="ok", integrality=True)
        text = " ".join(map(str, oracle)) + "\nintegrality OK\n"
        return render_report(report, args.format, text, oracle), EXIT_OK
    agree = sum(1 for a, b in zip(oracle, recursion) if a == b)
    mismatch = next(((n, a, b) for n, (a, b) in enumerate(zip(oracle, recursion)) if a != b), None)
    report["agree"] = agree
    report["total"] = N + 1
    if mismatch is None:
        report["status"] = "ok"
        text = f"OK {agree}/{N + 1}\n"
        if kind == "general":
            text = " ".join(map(str, oracle)) + "\nintegrality OK\n" + text
        return render_report(report, args.format, text, oracle), EXIT_OK
    n, a, b = mismatch
    report.update(status="mismatch", index=n, oracle_value=a, recursion_value=b)
    text = f"MISMATCH at n={n}: oracle={a} recursion={b} ({agree}/{N + 1} agree)\n"
    return render_report(report, args.format, text, oracle), EXIT_FAIL


def cmd_identity(args) -> tuple[str, int]:
    if args.tag not in analytic.IDENTITIES:
        raise UsageError(f"unknown identity {args.tag!r}; choose from {', '.join(analytic.IDENTITIES)}")
    budget = analytic.PrecisionBudget(args.terms, args.tol)
    r = analytic.check_identity(args.tag, budget)
    ident = analytic.IDENTITIES[args.tag]
    report = {
        "tag": r.tag,
        "identity": ident.text,
        "terms": args.terms,
        "lhs_lo": r.lhs.lo, "lhs_hi": r.lhs.hi,
        "rhs_lo": r.rhs.lo, "rhs_hi": r.rhs.hi,
        "overlap": r.overlap,
        "width": float(r.width),
        "gap": float(r.gap),
        "within_tol": r.within_tol,
    }
    for k in ("lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi"):
        # exact dyadic rationals as "p/q" strings
        report[k] = str(report[k])
    text = (
        f"{r.tag}: {ident.text}\n"
        f"lhs {r.lhs}\n"
        f"rhs {r.rhs}\n"
        f"overlap={str(r.overlap).lower()} width={float(r.width):.3e} "
        f"gap<={float(r.gap):.3e} tol={float(r.tol):.1e} within_tol={str(r.within_tol).lower()}\n"
    )
    seq = []
    if args.format == "bfile":
        spec = ident.spec
        seq = powerseries.hypergeom_exp_sequence(spec, args.terms)
    code = EXIT_OK if r.overlap else EXIT_FAIL
    return render_report(report, args.format, text, seq), code


def cmd_oeis(args) -> tuple[str, int]:
    _require(args, "L")
    if args.kind == "bell":
        vals = _grow(lambda n: sequences.extended_bell(args.L, n), range(args.n_max + 1), args.max_bits)
    elif args.kind == "restricted":
        _require(args, "p")
        vals = _grow(
            lambda n: sequences.restricted_bell(args.L, args.p, n), range(args.n_max + 1), args.max_bits
        )
    else:
        _require(args, "p")
        vals, _ = _supra_values(args)
    seq_id = oeis_io.validate_seq_id(args.id)
    if args.fetch:
        bfile = oeis_io.fetch(seq_id, args.cache_dir)
    else:
        bfile = oeis_io.load_fixture(seq_id)
    rep = oeis_io.compare(vals, args.offset, bfile)
    report = {
        "id": seq_id,
        "offset": args.offset,
        "matched": rep.matched,
        "overlap": list(rep.overlap),
        "status": "match" if rep.ok else "mismatch",
    }
    if rep.ok:
        text = f"{seq_id}: match, {rep.matched} terms (indices {rep.overlap[0]}..{rep.overlap[1]})\n"
    else:
        idx, ours, theirs = rep.first_mismatch
        report.update(index=idx, ours=ours, theirs=theirs)
        text = f"{seq_id}: MISMATCH at index {idx}: ours={ours} theirs={theirs} after {rep.matched} matching terms\n"
    return render_report(report, args.format, text, vals, args.offset), EXIT_OK if rep.ok else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")
    common.add_argument("--max-bits", type=_positive, default=None,
                        help="abort if any value grows beyond this many bits")

    parser = argparse.ArgumentParser(
        prog="hyperbell",
        description="Extended Bell / Stirling numbers with exact generating-function oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell", parents=[common], help="b_L(0..n_max)")
    p.add_argument("--L", type=_nonneg, required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("stirling", parents=[common], help="rows n=1..n_max of S_L(n, l)")
    p.add_argument("--L", type=_nonneg, required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("restricted", parents=[common], help="b_L(p, 0..n_max)")
    p.add_argument("--L", type=_nonneg, required=True)
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_restricted)

    p = sub.add_parser("supra", parents=[common], help="S_L(n+p, n) from the closed forms")
    p.add_argument("--L", type=_nonneg, required=True)
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_supra)

    p = sub.add_parser("oracle", parents=[common], help="series oracle vs recursion")
    p.add_argument("kind", choices=("bell", "stirling", "restricted", "general"))
    p.add_argument("--L", type=_nonneg)
    p.add_argument("--l", type=_positive)
    p.add_argument("--p", type=_nonneg)
    p.add_argument("--params", type=_params)
    p.add_argument("--order", type=_nonneg, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("identity", parents=[common], help="certified check of a transcendental identity")
    p.add_argument("tag")
    p.add_argument("--terms", type=_positive, default=60)
    p.add_argument("--tol", type=_fraction, default=Fraction(1, 10**30))
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("oeis", parents=[common], help="compare a computed sequence with an OEIS b-file")
    p.add_argument("kind", choices=("bell", "supra", "restricted"))
    p.add_argument("--id", required=True, help="A-number, e.g. A023998")
    p.add_argument("--L", type=_nonneg)
    p.add_argument("--p", type=_nonneg, default=0)
    p.add_argument("--n-max", type=_nonneg, default=15)
    p.add_argument("--offset", type=int, default=0,
                   help="b-file index of the first computed term")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--fetch", action="store_true", help="download the b-file (cached)")
    src.add_argument("--fixture", action="store_true", help="use the bundled b-file (default)")
    p.add_argument("--cache-dir", default=None,
                   help=f"download cache (default ${oeis_io.CACHE_ENV} or ~/.cache/hyperbell)")
    p.set_defaults(func=cmd_oeis)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except UsageError as exc:
        print(f"hyperbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (oeis_io.FetchError, oeis_io.BFileError, FileNotFoundError, OSError) as exc:
        print(f"hyperbell: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"hyperbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
