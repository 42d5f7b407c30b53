"""Command-line front end.

Subcommands map one-to-one onto the library modules: construct, verify,
moment, bound, constant, sample, estimate, and table (a sweep comparing the
program optimum against the closed-form values).  Output is canonical JSON by
default; csv and table are flat renderings of the same data.  All output is
deterministic: identical flags, including --seed, give identical bytes.

Exit codes: 0 success, 2 usage error, 1 computation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bounds import haagerup_constant, interpolation_bound, sharp_pairwise_value
from .constructions import independent_space, partition_space, xor_space
from .extremal import solve_full, solve_reduced
from .independence import check_kwise
from .intervals import DEFAULT_PREC, Interval
from .moments import Weights, pth_moment, ratio_from_moment
from .sampler import Stream, StreamSpec, estimate_moment

DIGITS = 40

CONSTRUCTIONS = {
    "partition": partition_space,
    "xor": xor_space,
    "independent": independent_space,
}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _weights(text: str) -> Weights:
    try:
        return Weights.from_strings(text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    return [int(s) for s in text.split(",")]


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(s) for s in text.split(",")]


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _interval_json(iv: Interval, bits: int) -> dict:
    lo, hi = iv.decimal_bounds(DIGITS)
    return {"lo": lo, "hi": hi, "bits": bits}


def _value_json(value, bits: int):
    if isinstance(value, Interval):
        return _interval_json(value, bits)
    return _frac_str(value)


# -- rendering ---------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    if v is None:
        return ""
    return str(v)


def _emit(data, fmt: str) -> None:
    """data is one dict or a list of row dicts sharing a schema."""
    if fmt == "json":
        print(json.dumps(data))
        return
    rows = data if isinstance(data, list) else [{"field": k, "value": v} for k, v in data.items()]
    header = list(rows[0]) if rows else []
    if fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join('"%s"' % _cell(row.get(h)).replace('"', '""')
                           if any(ch in _cell(row.get(h)) for ch in ',"')
                           else _cell(row.get(h)) for h in header))
        return
    cells = [[_cell(row.get(h)) for h in header] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for r in cells:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


# -- subcommands -------------------------------------------------------------


def _cmd_construct(args) -> dict:
    space = CONSTRUCTIONS[args.construct](args.n)
    return json.loads(space.to_json())


def _cmd_verify(args) -> dict:
    space = CONSTRUCTIONS[args.construct](args.n)
    return json.loads(check_kwise(space, args.k).to_json())


def _cmd_moment(args) -> dict:
    space = CONSTRUCTIONS[args.construct](args.n)
    a = args.a if args.a is not None else Weights.all_ones(space.n)
    result = pth_moment(space, a, args.p, prec=args.precision_bits)
    lo, hi = result.ratio.decimal_bounds(DIGITS)
    return {
        "p": _frac_str(result.p),
        "value": _value_json(result.value, args.precision_bits),
        "ratio": {"lo": lo, "hi": hi},
    }


def _cmd_bound(args) -> dict:
    prec = args.precision_bits
    if args.kind == "haagerup":
        if args.p is None:
            raise ValueError("haagerup bound needs --p")
        iv = haagerup_constant(args.p, prec)
    elif args.kind == "sharp":
        if args.n is None or args.p is None:
            raise ValueError("sharp value needs --n and --p")
        iv = sharp_pairwise_value(args.n, args.p, prec)
    else:
        if args.n is None or args.p is None or args.k is None:
            raise ValueError("interpolation bound needs --n, --p and --k")
        iv = interpolation_bound(args.n, args.p, args.k, prec)
    return {"kind": args.kind, "value": _interval_json(iv, prec)}


def _cmd_constant(args) -> dict:
    prec = args.precision_bits
    if args.full:
        if args.a is not None and args.a.n != args.n:
            raise ValueError(f"weight vector has dimension {args.a.n}, expected {args.n}")
        sol = solve_full(args.n, args.p, args.k, a=args.a, prec=prec)
        a = args.a if args.a is not None else Weights.all_ones(args.n)
        l2sq = a.l2sq
    else:
        if args.a is not None:
            raise ValueError("--a applies to the unreduced program only (use --full)")
        exact = Fraction(args.p).denominator == 1
        sol = solve_reduced(args.n, args.p, args.k, prec=prec, check_unique=exact)
        l2sq = Fraction(args.n)
    ratio = ratio_from_moment(sol.optimal_value, args.p, l2sq, prec)
    lo, hi = ratio.decimal_bounds(DIGITS)
    out = {
        "value": _value_json(sol.optimal_value, prec),
        "ratio": {"lo": lo, "hi": hi},
        "optimizer": json.loads(sol.optimizer.to_json()),
        "unique": sol.unique,
        "certificate_ok": sol.certificate_ok,
    }
    if sol.note:
        out["note"] = sol.note
    return out


def _cmd_sample(args) -> list[dict]:
    spec = StreamSpec(args.kind, args.n, args.seed)
    stream = Stream(spec)
    return [{"draw": i, "signs": str(stream.draw())} for i in range(args.samples)]


def _cmd_estimate(args) -> dict:
    spec = StreamSpec(args.kind, args.n, args.seed)
    est = estimate_moment(spec, args.a, args.p, args.samples)
    return {"spec": spec.to_json(), "p": _frac_str(Fraction(args.p)), **est.to_json()}


def _cmd_table(args) -> list[dict]:
    prec = args.precision_bits
    rows = []
    for n in args.n:
        for p in args.p:
            for k in args.k:
                if not 1 <= k <= n:
                    continue
                sol = solve_reduced(n, p, k, prec=prec)
                ratio = ratio_from_moment(sol.optimal_value, p, Fraction(n), prec)
                row = {
                    "n": n,
                    "p": _frac_str(p),
                    "k": k,
                    "value": _value_json(sol.optimal_value, prec),
                    "ratio_lo": ratio.decimal_bounds(DIGITS)[0],
                    "ratio_hi": ratio.decimal_bounds(DIGITS)[1],
                    "sharp": None,
                    "interpolation": None,
                    # lower endpoint: the emitted number must stay a valid baseline
                    "haagerup": haagerup_constant(p, prec).decimal_bounds(DIGITS)[0],
                }
                if n % 2 == 0 and k in (2, 3) and p >= 2:
                    row["sharp"] = sharp_pairwise_value(n, p, prec).decimal_bounds(DIGITS)[1]
                if k % 2 == 0 and p >= k:
                    row["interpolation"] = interpolation_bound(n, p, k, prec).decimal_bounds(DIGITS)[1]
                rows.append(row)
    return rows


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kwise",
        description="k-wise independent sign vectors: constructions, moments, "
        "and extremal constants by exact linear programming",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")
        p.add_argument("--precision-bits", type=int, default=DEFAULT_PREC)

    p = sub.add_parser("construct", help="build a named sample space")
    p.add_argument("--construct", choices=sorted(CONSTRUCTIONS), required=True)
    p.add_argument("--n", type=int, required=True)
    fmt(p)

    p = sub.add_parser("verify", help="check k-wise independence of a construction")
    p.add_argument("--construct", choices=sorted(CONSTRUCTIONS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    fmt(p)

    p = sub.add_parser("moment", help="exact p-th moment of a weighted sign sum")
    p.add_argument("--construct", choices=sorted(CONSTRUCTIONS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--a", type=_weights, help="comma-separated rational weights")
    fmt(p)

    p = sub.add_parser("bound", help="closed-form constants and bounds")
    p.add_argument("--kind", choices=("haagerup", "interpolation", "sharp"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_fraction)
    p.add_argument("--k", type=int)
    fmt(p)

    p = sub.add_parser("constant", help="extremal moment over k-wise independent laws")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--k", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--reduced", action="store_true", default=True,
                     help="exchangeable weight-class program (default)")
    grp.add_argument("--full", action="store_true", default=False,
                     help="unreduced program over all laws, one variable per atom")
    p.add_argument("--a", type=_weights, help="weights for the unreduced program")
    fmt(p)

    p = sub.add_parser("sample", help="draw sign vectors from a streaming law")
    p.add_argument("--kind", choices=("partition", "xor", "independent"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1)
    fmt(p)

    p = sub.add_parser("estimate", help="Monte Carlo moment estimate")
    p.add_argument("--kind", choices=("partition", "xor", "independent"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--a", type=_weights)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10000)
    fmt(p)

    p = sub.add_parser("table", help="sweep (n, p, k) and compare against bounds")
    p.add_argument("--n", type=_int_list, default=[2, 4, 6, 8])
    p.add_argument("--p", type=_fraction_list, default=[Fraction(2), Fraction(4)])
    p.add_argument("--k", type=_int_list, default=[2])
    fmt(p)

    return parser


_DISPATCH = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "moment": _cmd_moment,
    "bound": _cmd_bound,
    "constant": _cmd_constant,
    "sample": _cmd_sample,
    "estimate": _cmd_estimate,
    "table": _cmd_table,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage/help printing
        return int(exc.code or 0)
    try:
        data = _DISPATCH[args.command](args)
    except (ValueError, RuntimeError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(data, args.format)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
