"""Command-line front end.

Exact values are printed as integers or lowest-terms ``p/q`` strings and
never pass through floating point; Monte-Carlo summaries are the only
decimals.  Output is a human table by default, or ``--format
json|csv|jsonl``.  Sampling is reproducible: the stream for sample index
s is seeded with ``seed XOR s``, so results are byte-identical for any
worker count.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from fractions import Fraction
from random import Random

from . import exactnum as en
from . import hvg as hvg_mod
from . import moments, rgs
from . import series as series_mod
from . import verify as verify_mod
from .errors import HvgRgsError, TooLargeError
from .series import format_fraction

SAMPLE_STATS = ("V", "Vw", "degree-histogram", "block-count")
SERIES_ORDER_LIMIT = 16


def _render(value, decimal_places: int | None, keep_floats: bool = False):
    """Render one cell: exact strings for rationals unless --decimal asks."""
    if isinstance(value, Fraction):
        if decimal_places is None:
            return format_fraction(value)
        with decimal.localcontext() as ctx:
            ctx.prec = decimal_places + 30
            d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
            quantum = decimal.Decimal(1).scaleb(-decimal_places)
            return str(d.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN))
    if isinstance(value, float) and not keep_floats:
        return format(value, ".12g")
    return value


def _emit_rows(rows: list[dict], args, out) -> None:
    keep_floats = args.format in ("json", "jsonl")
    rows = [
        {k: _render(v, args.decimal, keep_floats) for k, v in row.items()}
        for row in rows
    ]
    fmt = args.format
    if fmt == "json":
        print(json.dumps(rows, indent=2), file=out)
    elif fmt == "jsonl":
        for row in rows:
            print(json.dumps(row), file=out)
    elif fmt == "csv":
        keys: list[str] = []
        for row in rows:
            for k in row:
                if k not in keys:
                    keys.append(k)
        writer = csv.DictWriter(out, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)
    else:
        _emit_table(rows, out)


def _emit_table(rows: list[dict], out) -> None:
    if not rows:
        return
    keys: list[str] = []
    for row in rows:
        for k in row:
            if k not in keys:
                keys.append(k)
    cells = [[str(row.get(k, "")) for k in keys] for row in rows]
    widths = [
        max(len(k), *(len(row[idx]) for row in cells)) for idx, k in enumerate(keys)
    ]
    print("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip(), file=out)
    for row in cells:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip(), file=out)


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", newline="")
    return None


def _with_out(args, fn) -> int:
    handle = _open_out(args)
    try:
        fn(handle or sys.stdout)
    finally:
        if handle:
            handle.close()
    return 0


def _enumeration_guard(n: int, force: bool) -> None:
    env = os.environ.get("HVGRGS_NMAX")
    if env is not None:
        if n <= int(env):
            return
        raise TooLargeError(f"n={n} exceeds HVGRGS_NMAX={env}")
    if force:
        return
    if en.bell(n) > moments.ENUMERATION_GUARD:
        raise TooLargeError(
            f"bell({n}) = {en.bell(n)} exceeds {moments.ENUMERATION_GUARD}; "
            "pass --force to enumerate anyway"
        )


# -- numbers ----------------------------------------------------------------


def _cmd_numbers(args) -> int:
    kind = args.table_name
    rows: list[dict] = []
    single = None
    if kind == "stirling":
        if args.k is not None:
            single = en.stirling2(args.n, args.k)
            rows = [{"n": args.n, "k": args.k, "value": single}]
        else:
            rows = [
                {"n": args.n, "k": k, "value": en.stirling2(args.n, k)}
                for k in range(args.n + 1)
            ]
    elif kind == "bell":
        if args.table:
            rows = [{"n": n, "value": en.bell(n)} for n in range(args.n + 1)]
        else:
            single = en.bell(args.n)
            rows = [{"n": args.n, "value": single}]
    elif kind == "bernoulli":
        if args.table:
            rows = [
                {"n": n, "value": en.bernoulli_plus(n)} for n in range(args.n + 1)
            ]
        else:
            single = en.bernoulli_plus(args.n)
            rows = [{"n": args.n, "value": single}]
    elif kind == "psi":
        if args.t is None:
            raise HvgRgsError("psi requires --t")
        single = en.faulhaber_psi(args.n, args.t)
        rows = [{"n": args.n, "t": args.t, "value": single}]
    elif kind == "theta":
        if args.t is None:
            raise HvgRgsError("theta requires --t")
        single = en.theta(args.n, args.t)
        rows = [{"n": args.n, "t": args.t, "value": single}]

    def write(out):
        if args.format == "table" and single is not None:
            print(_render(single, args.decimal), file=out)
        else:
            _emit_rows(rows, args, out)

    return _with_out(args, write)


# -- enumerate ----------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    _enumeration_guard(args.n, args.force)
    prefix = rgs.word_from_string(args.prefix) if args.prefix else ()

    def write(out):
        for seq in rgs.enumerate_rgs(args.n, args.k, prefix):
            text = str(seq.to_partition()) if args.partitions else str(seq)
            if args.format == "jsonl":
                print(json.dumps({"seq": text}), file=out)
            else:
                print(text, file=out)

    return _with_out(args, write)


# -- hvg ----------------------------------------------------------------------


def _cmd_hvg(args) -> int:
    word = rgs.word_from_string(args.seq)
    builder = hvg_mod.strong_graph if args.mode == "strong" else hvg_mod.weak_graph
    graph = builder(word, algorithm=args.algorithm)
    payload = graph.to_json_dict()

    def write(out):
        if args.format == "csv":
            _emit_rows([{"i": i, "j": j} for i, j in sorted(graph.edges)], args, out)
        elif args.format == "jsonl":
            print(json.dumps(payload), file=out)
        else:
            indent = 2 if args.format == "table" else None
            print(json.dumps(payload, indent=indent), file=out)

    return _with_out(args, write)


# -- exact ----------------------------------------------------------------


def _cmd_exact(args) -> int:
    if args.query == "edge-prob":
        if args.i is None or args.j is None:
            raise HvgRgsError("edge-prob requires --i and --j")
        prob = moments.edge_prob(args.n, args.i, args.j, args.mode)
        value = prob.value
        row = {"n": args.n, "i": args.i, "j": args.j, "mode": args.mode, "exact": value}
    elif args.query == "expected-degree":
        if args.i is None:
            raise HvgRgsError("expected-degree requires --i")
        if args.mode == "weak-minus-strong":
            raise HvgRgsError("expected-degree accepts --mode strong or weak")
        value = moments.expected_degree(args.n, args.i, args.mode)
        row = {"n": args.n, "i": args.i, "mode": args.mode, "exact": value}
    else:  # expected-edges
        if args.mode == "weak-minus-strong":
            raise HvgRgsError("expected-edges accepts --mode strong or weak")
        value = moments.expected_edges(args.n, args.mode)
        row = {"n": args.n, "mode": args.mode, "exact": value}

    def write(out):
        if args.format == "table":
            print(_render(value, args.decimal), file=out)
        else:
            _emit_rows([row], args, out)

    return _with_out(args, write)


# -- series ----------------------------------------------------------------


def _series_to_csv_rows(ts) -> list[dict]:
    rows = []
    for n, coeff in enumerate(ts.coeffs):
        for d, c in enumerate(coeff.coeffs):
            if c:
                rows.append({"x": n, "q": d, "value": c})
    return rows


def _cmd_series(args) -> int:
    order = args.order
    if not 0 <= order <= SERIES_ORDER_LIMIT:
        raise HvgRgsError(f"--order must lie in 0..{SERIES_ORDER_LIMIT}")
    if args.kind == "q-moments":
        if order < 2:
            raise HvgRgsError("q-moments requires --order >= 2")
        coeffs = series_mod.q_moment_egf(order)
        rows = []
        for n in range(2, order + 1):
            c = coeffs[n - 2]
            rows.append(
                {
                    "n": n,
                    "coeff": c,
                    "expected_edges": c * math.factorial(n) / en.bell(n),
                }
            )

        def write(out):
            _emit_rows(rows, args, out)

        return _with_out(args, write)

    if args.kind == "pk":
        if args.k is None:
            raise HvgRgsError("pk requires --k")
        if not 1 <= args.k <= order:
            raise HvgRgsError("pk requires 1 <= k <= order")
        ts = series_mod.p_k(args.k, order)
    else:  # sum-p
        ts = series_mod.sum_p(order)

    def write(out):
        if args.format == "csv":
            _emit_rows(_series_to_csv_rows(ts), args, out)
        elif args.format == "jsonl":
            print(json.dumps(ts.to_json_dict()), file=out)
        else:
            indent = 2 if args.format == "table" else None
            print(json.dumps(ts.to_json_dict(), indent=indent), file=out)

    return _with_out(args, write)


# -- sample ----------------------------------------------------------------


def _sample_one(n: int, seed: int, index: int) -> tuple[int, ...]:
    rng = Random(seed ^ index)
    return rgs.stam_sample(n, rng).word


def _sample_chunk(payload) -> dict:
    n, seed, start, stop, wanted, keep_words = payload
    scalars = {name: [0, Fraction(0), Fraction(0)] for name in wanted}
    histograms: dict[str, Counter] = {name: Counter() for name in wanted}
    words: list[str] = []
    for index in range(start, stop):
        word = _sample_one(n, seed, index)
        if keep_words:
            words.append(rgs.serialize_word(word))
        if not wanted:
            continue
        strong = hvg_mod.strong_edge_set(word)
        values: dict[str, object] = {}
        if "V" in wanted:
            values["V"] = len(strong)
        if "Vw" in wanted:
            values["Vw"] = len(hvg_mod.weak_edge_set(word))
        if "block-count" in wanted:
            values["block-count"] = max(word)
        if "degree-histogram" in wanted:
            degrees = Counter()
            for a, b in strong:
                degrees[a] += 1
                degrees[b] += 1
            histograms["degree-histogram"].update(
                Counter(degrees[i] for i in range(1, n + 1))
            )
            values["degree-histogram"] = Fraction(2 * len(strong), n)
        for name, value in values.items():
            if name != "degree-histogram":
                histograms[name][value] += 1
            acc = scalars[name]
            acc[0] += 1
            acc[1] += Fraction(value)
            acc[2] += Fraction(value) ** 2
    return {"scalars": scalars, "histograms": histograms, "words": words}


def _run_sampling(args, wanted, keep_words):
    chunks = []
    workers = args.workers
    total = args.samples
    step = max(1, -(-total // max(workers, 1)))
    start = 0
    while start < total:
        stop = min(start + step, total)
        chunks.append((args.n, args.seed, start, stop, tuple(wanted), keep_words))
        start = stop
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sample_chunk, chunks))
    else:
        results = [_sample_chunk(c) for c in chunks]
    merged = {
        "scalars": {name: [0, Fraction(0), Fraction(0)] for name in wanted},
        "histograms": {name: Counter() for name in wanted},
        "words": [],
    }
    for part in results:
        merged["words"].extend(part["words"])
        for name in wanted:
            for idx in range(3):
                merged["scalars"][name][idx] += part["scalars"][name][idx]
            merged["histograms"][name].update(part["histograms"][name])
    return merged


def _cmd_sample(args) -> int:
    if args.samples < 1:
        raise HvgRgsError("--samples must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise HvgRgsError("--seed must be an unsigned 64-bit integer")
    if args.workers < 1:
        raise HvgRgsError("--workers must be >= 1")
    wanted = []
    if args.emit != "sequences":
        for name in args.stats.split(","):
            name = name.strip()
            if name not in SAMPLE_STATS:
                raise HvgRgsError(
                    f"unknown statistic {name!r}; choose from {', '.join(SAMPLE_STATS)}"
                )
            if name not in wanted:
                wanted.append(name)
    merged = _run_sampling(args, wanted, keep_words=args.emit == "sequences")

    def write(out):
        if args.emit == "sequences":
            for text in merged["words"]:
                if args.format == "jsonl":
                    print(json.dumps({"seq": text}), file=out)
                else:
                    print(text, file=out)
            return
        if args.emit == "stats":
            rows = []
            for name in wanted:
                count, total, total_sq = merged["scalars"][name]
                mean = total / count
                if count > 1:
                    variance = (total_sq - total * total / count) / (count - 1)
                    stderr = float((variance / count) ** 0.5)
                else:
                    stderr = 0.0
                rows.append(
                    {
                        "stat": name,
                        "samples": count,
                        "estimate": float(mean),
                        "stderr": stderr,
                    }
                )
            _emit_rows(rows, args, out)
            return
        rows = []
        for name in wanted:
            for value in sorted(merged["histograms"][name]):
                rows.append(
                    {
                        "stat": name,
                        "value": value,
                        "count": merged["histograms"][name][value],
                    }
                )
        _emit_rows(rows, args, out)

    return _with_out(args, write)


# -- verify ----------------------------------------------------------------


def _cmd_verify(args) -> int:
    if args.max_n > 10:
        raise HvgRgsError("--max-n is capped at 10")
    if args.max_n > 9 and not args.slow:
        raise HvgRgsError("--max-n 10 requires --slow")
    results = verify_mod.run_checks(args.max_n)
    failures = 0
    out = sys.stdout
    for result in results:
        if result.ok:
            print(f"PASS {result.name} ({result.detail})", file=out)
        else:
            failures += 1
            print(f"FAIL {result.name}: {result.detail}", file=out)
    print(
        f"{'FAIL' if failures else 'PASS'}: {len(results) - failures}/{len(results)} checks passed",
        file=out,
    )
    return 1 if failures else 0


# -- parser ----------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("table", "json", "csv", "jsonl"),
        default="table",
        help="output format (default: human-readable table)",
    )
    parser.add_argument(
        "--decimal",
        type=int,
        metavar="K",
        default=None,
        help="render rationals as decimals with K digits (round-half-even)",
    )
    parser.add_argument("--out", metavar="FILE", help="write output to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvgrgs",
        description="Exact visibility-graph statistics of random growth sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numbers", help="combinatorial number tables")
    p.add_argument(
        "table_name", choices=("stirling", "bell", "bernoulli", "psi", "theta")
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--table", action="store_true", help="print indices 0..n")
    _add_common(p)
    p.set_defaults(func=_cmd_numbers)

    p = sub.add_parser("enumerate", help="list growth sequences in lex order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="restrict to exactly k distinct letters")
    p.add_argument("--prefix", help="only sequences extending this word")
    p.add_argument("--partitions", action="store_true", help="print block form")
    p.add_argument("--force", action="store_true", help="bypass the size guard")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("hvg", help="build a visibility graph")
    p.add_argument("--seq", required=True, help="word, e.g. 12122 or 1,2,10")
    p.add_argument("--mode", choices=("strong", "weak"), default="strong")
    p.add_argument(
        "--algorithm",
        choices=("stack", "scan"),
        default="stack",
        help="single-pass stack or quadratic reference scan",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_hvg)

    p = sub.add_parser("exact", help="closed-form probabilities and expectations")
    p.add_argument(
        "query", choices=("edge-prob", "expected-degree", "expected-edges")
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument(
        "--mode",
        choices=("strong", "weak", "weak-minus-strong"),
        default="strong",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("series", help="generating-series tables")
    p.add_argument("kind", choices=("q-moments", "pk", "sum-p"))
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--k", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("sample", help="seeded Monte-Carlo experiments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--emit",
        choices=("sequences", "stats", "histogram"),
        default="stats",
    )
    p.add_argument(
        "--stats",
        default="V",
        help=f"comma list from: {', '.join(SAMPLE_STATS)}",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--slow", action="store_true", help="allow --max-n 10")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HvgRgsError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
