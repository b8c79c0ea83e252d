"""Command-line front end.

Every subcommand prints human text by default and a versioned JSON report
with ``--json``.  Exit codes: 0 success, 1 domain-negative result when
``--fail-on-not-found`` is given, 2 usage errors, 3 precondition errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import errors as E
from .applications import (
    balance_verdict,
    chordal_bipartite_homogeneous,
    gamma_to_q1,
    halfplane_homogeneous,
    totally_balanced_homogeneous,
)
from .constructions import KINDS, GeneratorSpec, generate, staircase, structured
from .containment import contains_ordered, contains_unordered, count_ordered_copies, verify_copy
from .extractors import (
    density_dichotomy,
    extract_ordered_general,
    extract_theorem1,
    extract_theorem2,
    extract_theorem3,
    extract_theorem_2by2,
    extract_unordered,
    perm_dichotomy,
)
from .kernels import BACKEND
from .matrix import ZeroOneMatrix, emit, parse, read_matrix
from .oracle import GoodnessReport, enumerate_simple, goodness_estimate, max_homogeneous_square, oracle_contains
from .patterns import Pattern, parse_pattern

SCHEMA = 1
METHODS = ("t2by2", "t1", "t2", "t3", "unordered", "perm", "ordered", "density")
SUITES = ("extract-scaling", "goodness-sweep", "oracle-limits")
BENCH_HEADER = ("suite", "n", "seed", "metric", "value", "wall_time_ms")

USAGE_ERRORS = (
    E.FormatError,
    E.InvalidParams,
    E.InvalidSize,
    E.IndexOutOfRange,
    E.EmptyMatrix,
    E.IndivisibleSize,
    E.InvalidSuite,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# helpers


def _load(path: str) -> ZeroOneMatrix:
    if path == "-":
        return parse(sys.stdin.read())
    return read_matrix(path)


def _pattern(spec: str | None, required: bool = True) -> Pattern | None:
    if spec is None:
        if required:
            raise UsageError("this command needs -p/--pattern")
        return None
    return parse_pattern(spec)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _number(text: str):
    """Exact Fraction for integer or a/b input, float for decimals."""
    t = text.strip()
    try:
        if "." in t or "e" in t.lower():
            return float(t)
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise E.FormatError(f"not a number: {text!r}") from exc


def _params(text_items: list[str] | None) -> dict:
    out = {}
    for item in text_items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, int(args.threads))
    env = os.environ.get("HOMOG_THREADS", "")
    return max(1, int(env)) if env.isdigit() else 1


def _echo(args) -> dict:
    skip = {"func", "json", "timing", "fail_on_not_found", "threads", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _flag(v) -> str:
    return "true" if v else "false"


def _outcome_text(d: dict) -> str:
    lines = [f"outcome={d['outcome']} method={d['method']} value={d.get('value')} size={d['size']}"]
    lines.append("rows=" + ",".join(map(str, d["rows"])))
    lines.append("cols=" + ",".join(map(str, d["cols"])))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands; each returns (result dict, text, negative flag)


def cmd_classify(args):
    P = _pattern(args.pattern)
    f = P.flags()
    text = f"acyclic={_flag(f['acyclic'])} simple={_flag(f['simple'])} homog-col={_flag(f['homogeneous_col'])}"
    return {"pattern": P.name, **f, "matrix": P.tolist()}, text, False


def cmd_contains(args):
    A = _load(args.matrix)
    P = _pattern(args.pattern)
    res = (contains_unordered if args.unordered else contains_ordered)(A, P)
    if res.found:
        verify_copy(A, P, res.witness, args.unordered)
    out = res.to_dict()
    out["unordered"] = args.unordered
    if args.verify:
        truth = oracle_contains(A, P, unordered=args.unordered)
        out["oracle_agrees"] = bool(truth.found == res.found)
    if args.count:
        if args.unordered:
            raise UsageError("--count is for ordered containment only")
        cap = args.cap if args.cap is not None else 2 * max(A.shape)
        out["count"] = count_ordered_copies(A, P, cap=cap)
        out["cap"] = cap
    text = f"found={_flag(res.found)}"
    if res.found:
        text += "\nrows=" + ",".join(map(str, out["rows"])) + "\ncols=" + ",".join(map(str, out["cols"]))
    if "count" in out:
        text += f"\ncount={out['count']}"
    return out, text, not res.found


def _extract(A, method, args):
    eps = _fraction(args.eps) if args.eps is not None else None
    if method == "t2by2":
        return extract_theorem_2by2(A, _pattern(args.pattern))
    if method == "t1":
        return extract_theorem1(A, _pattern(args.pattern), s_override=args.s_override)
    if method == "t2":
        return extract_theorem2(A)
    if method == "t3":
        return extract_theorem3(A, _pattern(args.pattern), seed=args.seed)
    if method == "unordered":
        return extract_unordered(A, _pattern(args.pattern), eps if eps is not None else Fraction(1, 2))
    if method == "perm":
        return perm_dichotomy(A, _pattern(args.pattern), s_override=args.s_override, eps_override=eps)
    if method == "ordered":
        return extract_ordered_general(A, _pattern(args.pattern), eps if eps is not None else Fraction(1, 2), seed=args.seed)
    raise UsageError(f"unknown method {method!r}")  # pragma: no cover


def cmd_extract(args):
    A = _load(args.matrix)
    if args.method == "density":
        eps = _fraction(args.eps) if args.eps is not None else Fraction(A.count(0), A.rows * A.cols)
        d = density_dichotomy(A, eps).verify(A)
        out = {"outcome": d.kind, "method": "density", "t": d.t, "params": {"eps": str(eps)}}
        if d.block is not None:
            out.update(d.block.to_dict())
            text = _outcome_text(out)
        else:
            out["pairs"] = [list(p) for p in sorted(d.pairs)]
            out["pair_count"] = len(d.pairs)
            text = f"outcome=pairs method=density t={d.t} pairs={len(d.pairs)}"
        return out, text, False
    res = _extract(A, args.method, args).verify(A)
    out = res.to_dict()
    out["info"] = res.info
    return out, _outcome_text(out), res.violation is not None


def cmd_construct(args):
    params = _params(args.param)
    if args.pattern is not None:
        params["pattern"] = args.pattern
    if args.kind == "blowup":
        if args.base is None:
            raise UsageError("blowup needs --base FILE")
        params["base"] = _load(args.base)
    A = generate(GeneratorSpec(args.kind, args.n, args.seed, params))
    body = emit(A)
    out = {"kind": args.kind, "n": args.n, "shape": list(A.shape), "ones": A.count(1), "zeros": A.count(0)}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
        out["path"] = args.output
        text = f"wrote {args.output} ({A.rows}x{A.cols}, ones={out['ones']})"
    else:
        out["matrix"] = body.splitlines()[1:]
        text = body.rstrip("\n")
    return out, text, False


def cmd_oracle_maxhom(args):
    A = _load(args.matrix)
    r = max_homogeneous_square(A, args.value, force=args.force)
    if r.block is not None:
        r.block.verify(A)
    out = r.to_dict()
    return out, f"size={r.size} value={r.value} exact={_flag(r.exact)} method={r.method}", False


def cmd_oracle_contains(args):
    A = _load(args.matrix)
    P = _pattern(args.pattern)
    res = oracle_contains(A, P, unordered=args.unordered)
    if res.found:
        verify_copy(A, P, res.witness, args.unordered)
    out = res.to_dict()
    return out, f"found={_flag(res.found)}", not res.found


def cmd_oracle_simple(args):
    mats = enumerate_simple(args.k, args.l)
    out = {"k": args.k, "l": args.l, "count": len(mats)}
    if args.list:
        out["matrices"] = [["".join(map(str, row)) for row in M.tolist()] for M in mats]
    return out, f"count={len(mats)}", False


def _goodness_reports(args) -> list[GoodnessReport]:
    P = _pattern(args.pattern)
    reports = []
    for text in args.eps.split(","):
        reports.append(
            goodness_estimate(
                P,
                _fraction(text),
                args.n,
                mode=args.mode,
                samples=args.samples,
                seed=args.seed,
                allow_n5=args.allow_n5,
            )
        )
    return reports


def cmd_goodness(args):
    reports = _goodness_reports(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GoodnessReport.CSV_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    text = buf.getvalue().rstrip("\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    out = {"reports": [r.to_dict() for r in reports]}
    return out, text, False


def cmd_balanced(args):
    A = _load(args.matrix)
    v = balance_verdict(A, certificate=args.certificate)
    out = v.to_dict()
    text = f"balanced={_flag(v.balanced)}"
    if v.cycle is not None:
        text += "\ncycle_rows=" + ",".join(map(str, v.cycle.rows)) + "\ncycle_cols=" + ",".join(map(str, v.cycle.cols))
    if args.homogeneous:
        if not v.balanced:
            raise E.NotTotallyBalanced("matrix is not totally balanced")
        res = totally_balanced_homogeneous(A).verify(A)
        out["extraction"] = res.to_dict()
        text += "\n" + _outcome_text(out["extraction"])
    return out, text, not v.balanced


def cmd_app_chordal(args):
    A = _load(args.matrix)
    pair = chordal_bipartite_homogeneous(A)
    A.slice(pair.left, pair.right)  # bounds check
    want = 1 if pair.verdict == "complete" else 0
    if pair.size and A.slice(pair.left, pair.right).homogeneous_value() != want:
        raise E.VerificationError("chordal pair is not homogeneous")  # pragma: no cover
    out = pair.to_dict()
    text = f"verdict={pair.verdict} size={pair.size} fallback={_flag(pair.fallback)}"
    text += "\nleft=" + ",".join(map(str, pair.left)) + "\nright=" + ",".join(map(str, pair.right))
    return out, text, False


def _read_csv(path: str, width: int, what: str) -> list[tuple]:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for no, rec in enumerate(csv.reader(fh), start=1):
            rec = [x.strip() for x in rec]
            if not rec or not any(rec) or rec[0].startswith("#"):
                continue
            if len(rec) != width:
                raise E.FormatError(f"{what} row needs {width} fields, got {len(rec)}", no)
            rows.append(rec)
    return rows


def cmd_app_halfplanes(args):
    points = [(_number(x), _number(y)) for x, y in _read_csv(args.points, 2, "points")]
    planes = [(_number(a), _number(b), side) for a, b, side in _read_csv(args.planes, 3, "planes")]
    order, res = halfplane_homogeneous(points, planes)
    out = {"ordering": order.to_dict(), **res.to_dict()}
    return out, _outcome_text(out), False


# ---------------------------------------------------------------------------
# benchmarks


def _timed(fn):
    t0 = time.perf_counter()
    rows = fn()
    ms = (time.perf_counter() - t0) * 1000.0
    return [(*r, round(ms, 3)) for r in rows]


def _bench_extract(n, seed):
    def run():
        rows = []
        if seed == 0:
            rows.append(("t2_size:staircase", extract_theorem2(staircase(n)).size))
        A = gamma_to_q1(structured("gamma-free", n, seed=seed))
        rows.append(("t2_size:gamma-q1", extract_theorem2(A).size))
        return rows

    return run


def _bench_goodness(n, seed, patterns, eps_list):
    def run():
        rows = []
        mode = "exhaustive" if n <= 4 else "sampled"
        for spec in patterns:
            P = parse_pattern(spec)
            for e in eps_list:
                try:
                    r = goodness_estimate(P, e, n, mode=mode, seed=seed)
                    val = float(r.realized_delta)
                except E.NoQualifyingMatrix:
                    val = float("nan")
                rows.append((f"realized_delta:{spec}:eps={e}", val))
        return rows

    return run


def _bench_oracle(n, seed):
    def run():
        A = structured("bernoulli", n, {"p": 0.5}, seed=seed)
        r0 = max_homogeneous_square(A, 0, force=True)
        r1 = max_homogeneous_square(A, 1, force=True)
        return [("max_hom0", r0.size), ("max_hom1", r1.size), ("exact", int(r0.exact and r1.exact))]

    return run


def bench_rows(suite, sizes, seeds, threads=1, patterns=None, eps_list=None) -> list[tuple]:
    """Benchmark rows (suite, n, seed, metric, value, wall_time_ms) in task order."""
    if suite not in SUITES:
        raise E.InvalidSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "extract-scaling":
        sizes = sizes or [100, 200, 400]
        tasks = [(n, s, _bench_extract(n, s)) for n in sizes for s in seeds]
    elif suite == "goodness-sweep":
        sizes = sizes or [4]
        patterns = patterns or ["P2k:2", "P2k:4"]
        eps_list = eps_list or [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
        tasks = [(n, s, _bench_goodness(n, s, patterns, eps_list)) for n in sizes for s in seeds]
    else:
        sizes = sizes or [20]
        tasks = [(n, s, _bench_oracle(n, s)) for n in sizes for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda t: _timed(t[2]), tasks))
    out = []
    for (n, s, _), rows in zip(tasks, results):
        for metric, value, ms in rows:
            out.append((suite, n, s, metric, value, ms))
    return out


def cmd_bench(args):
    sizes = _int_list(args.sizes) if args.sizes else None
    seeds = _int_list(args.seeds) if args.seeds else [args.seed]
    patterns = args.patterns.split(",") if args.patterns else None
    eps_list = [_fraction(x) for x in args.eps_list.split(",")] if args.eps_list else None
    rows = bench_rows(args.suite, sizes, seeds, _threads(args), patterns, eps_list)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    w.writerows(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    out = {"rows": [dict(zip(BENCH_HEADER, r)) for r in rows]}
    return out, buf.getvalue().rstrip("\n"), False


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for every stochastic step")
    common.add_argument("--timing", action="store_true", help="add wall_time_ms to the JSON report")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: $HOMOG_THREADS or 1)")
    common.add_argument("--fail-on-not-found", action="store_true", help="exit 1 on a negative result")

    p = _Parser(prog="patternfree", description="Forbidden 0-1 submatrix patterns and homogeneous blocks.")
    p.add_argument("--version", action="version", version=f"patternfree 0.1.0 ({BACKEND} backend)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify a pattern")
    c.add_argument("-p", "--pattern", required=True)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("contains", parents=[common], help="ordered or unordered containment")
    c.add_argument("-m", "--matrix", required=True)
    c.add_argument("-p", "--pattern", required=True)
    c.add_argument("--unordered", action="store_true")
    c.add_argument("--count", action="store_true", help="count ordered copies up to --cap")
    c.add_argument("--cap", type=int, default=None)
    c.add_argument("--verify", action="store_true", help="cross-check with the brute-force oracle")
    c.set_defaults(func=cmd_contains)

    c = sub.add_parser("extract", parents=[common], help="extract a homogeneous block")
    c.add_argument("--method", required=True, choices=METHODS)
    c.add_argument("-m", "--matrix", required=True)
    c.add_argument("-p", "--pattern")
    c.add_argument("--eps")
    c.add_argument("--s-override", type=int, default=None)
    c.set_defaults(func=cmd_extract)

    c = sub.add_parser("construct", parents=[common], help="generate an input matrix")
    c.add_argument("--kind", required=True, choices=KINDS)
    c.add_argument("-p", "--pattern")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--base", help="base matrix file for blowup")
    c.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra generator parameter")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    o = sub.add_parser("oracle", help="exact brute-force oracles")
    osub = o.add_subparsers(dest="oracle_command", parser_class=_Parser)
    c = osub.add_parser("max-hom", parents=[common], help="largest homogeneous square")
    c.add_argument("-m", "--matrix", required=True)
    c.add_argument("--value", type=int, choices=(0, 1), default=0)
    c.add_argument("--force", action="store_true", help="allow budgeted search above the exact limit")
    c.set_defaults(func=cmd_oracle_maxhom)
    c = osub.add_parser("contains", parents=[common], help="brute-force containment")
    c.add_argument("-m", "--matrix", required=True)
    c.add_argument("-p", "--pattern", required=True)
    c.add_argument("--unordered", action="store_true")
    c.set_defaults(func=cmd_oracle_contains)
    c = osub.add_parser("simple", parents=[common], help="enumerate simple k x l matrices")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_oracle_simple)
    for target in (osub, sub):
        c = target.add_parser("goodness", parents=[common], help="realized delta for (eps, delta)-goodness")
        c.add_argument("-p", "--pattern", required=True)
        c.add_argument("--eps", required=True, help="one value or a comma-separated list")
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
        c.add_argument("--samples", type=int, default=200)
        c.add_argument("--allow-n5", action="store_true")
        c.add_argument("--csv", help="also write the CSV to this file")
        c.set_defaults(func=cmd_goodness)

    c = sub.add_parser("balanced", parents=[common], help="totally balanced recognition")
    c.add_argument("-m", "--matrix", required=True)
    c.add_argument("--certificate", action="store_true", help="search for a cycle submatrix when negative")
    c.add_argument("--homogeneous", action="store_true", help="also extract a homogeneous block")
    c.set_defaults(func=cmd_balanced)

    a = sub.add_parser("app", help="applications")
    asub = a.add_subparsers(dest="app_command", parser_class=_Parser)
    c = asub.add_parser("chordal", parents=[common], help="homogeneous pair in a chordal bipartite graph")
    c.add_argument("-m", "--matrix", required=True)
    c.set_defaults(func=cmd_app_chordal)
    c = asub.add_parser("halfplanes", parents=[common], help="homogeneous block of a point-halfplane incidence")
    c.add_argument("--points", required=True)
    c.add_argument("--planes", required=True)
    c.set_defaults(func=cmd_app_halfplanes)

    c = sub.add_parser("bench", parents=[common], help="benchmark suites (CSV)")
    c.add_argument("--suite", required=True)
    c.add_argument("--sizes", help="comma-separated n values")
    c.add_argument("--seeds", help="comma-separated seeds (default: --seed)")
    c.add_argument("--patterns", help="goodness-sweep patterns, comma-separated")
    c.add_argument("--eps-list", help="goodness-sweep eps values, comma-separated")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_bench)
    return p


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ZeroOneMatrix):
        return x.tolist()
    if hasattr(x, "item"):
        return x.item()
    if hasattr(x, "tolist"):
        return x.tolist()
    return str(x)


def _negative_exit(args, negative: bool) -> int:
    return 1 if negative and getattr(args, "fail_on_not_found", False) else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            parser.print_help(sys.stderr)
            return 2
        t0 = time.perf_counter()
        result, text, negative = args.func(args)
        ms = (time.perf_counter() - t0) * 1000.0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except E.PatternFreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.json:
        command = args.command
        for extra in ("oracle_command", "app_command"):
            if getattr(args, extra, None):
                command += " " + getattr(args, extra)
        report = {
            "schema": SCHEMA,
            "command": command,
            "params": _echo(args),
            "seed": args.seed,
            "backend": BACKEND,
            "result": result,
        }
        if isinstance(result, dict) and "exact" in result:
            report["exact"] = result["exact"]
        if args.timing:
            report["wall_time_ms"] = round(ms, 3)
        print(json.dumps(report, default=_jsonable, sort_keys=False))
    else:
        print(text)
    return _negative_exit(args, negative)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
