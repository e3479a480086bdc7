"""Command-line front end: ``penthex decide|witness|count|oracle|bench CODE``."""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .boundary_code import BoundaryCode, canonical_rotation, parse
from .errors import ParseError, PentHexError, Unsupported
from .oracle import SearchConfig, fill_search
from .serialize import patch_to_record, to_dot, to_svg
from .solver import SolverConfig, choose_d, count_solutions, decide

__all__ = ["main", "build_parser", "bench_table"]


def _single(text: str) -> BoundaryCode:
    items = parse(text)
    if len(items) != 1:
        raise ParseError(f"expected one boundary code, got {len(items)}")
    return items[0]


def _config(args, want_witness: bool) -> SolverConfig:
    return SolverConfig(d_override=args.d, conjecture_mode=args.conjecture,
                        want_witness=want_witness, count_cap=getattr(args, "cap", None))


def _record(**fields) -> str:
    return json.dumps(fields, separators=(", ", ": "))


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _answer_word(ans) -> str:
    word = "yes" if ans.exists else "no"
    return word + " (conditional)" if ans.stats.get("conditional") and ans.exists else word


def cmd_decide(args, witness: bool = False) -> int:
    code = _single(args.code)
    ans = decide(code, _config(args, want_witness=witness))
    st = ans.stats
    if args.format == "drawing":
        if not witness:
            raise ParseError("--format drawing needs the witness subcommand")
        if not ans.witness:
            print(_answer_word(ans))
            return 0
        out = to_dot(ans.witness) if str(args.out or "").endswith(".dot") else to_svg(ans.witness)
        _emit(args, out)
        return 0
    if args.format == "record":
        rec = dict(answer=_answer_word(ans), f5=st["f5"], n=st["n"], d=st["d"], nodes=st["nodes"],
                   time_ms=st["time_ms"], witness=None)
        if witness and ans.witness:
            rec["witness"] = [patch_to_record(p) for p in ans.witness]
            rec["trace"] = ans.trace.lines()
        _emit(args, _record(**rec) + "\n")
        return 0
    lines = [_answer_word(ans)]
    if witness and ans.witness:
        lines += [f"  {line}" for line in ans.trace.lines()]
        for p in ans.witness:
            lines.append(f"  patch: {p.n_vertices} vertices, boundary {''.join(map(str, p.code))}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_count(args) -> int:
    code = _single(args.code)
    t0 = time.perf_counter()
    cnt = count_solutions(code, args.cap, _config(args, want_witness=False))
    if args.format == "record":
        _emit(args, _record(count=cnt, saturated=cnt >= args.cap, cap=args.cap, f5=code.f5, n=len(code),
                            d=choose_d(code, _config(args, False)),
                            time_ms=round((time.perf_counter() - t0) * 1000, 3)) + "\n")
    else:
        _emit(args, f"{cnt}\n")
    return 0


def cmd_oracle(args) -> int:
    code = _single(args.code)
    if code.f5 > 5:
        raise Unsupported("the oracle has no terminating budget for f5 > 5")
    t0 = time.perf_counter()
    found = fill_search(code, SearchConfig(face_budget=args.budget, witness_cap=args.cap))
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    if args.format == "record":
        _emit(args, _record(answer="yes" if found else "no", f5=code.f5, n=len(code), d=None, nodes=None,
                            time_ms=elapsed, witness=[patch_to_record(p) for p in found],
                            count=len(found), saturated=len(found) >= args.cap) + "\n")
    elif args.format == "drawing":
        _emit(args, to_svg(found) if found else "")
    else:
        _emit(args, f"{len(found)} solution{'' if len(found) == 1 else 's'}\n")
    return 0


def _corpus(n: int, sample: Optional[int], rng: random.Random) -> list[BoundaryCode]:
    """Rotation classes of length ``n`` with 0 <= f5 <= 5, or a random sample of them."""
    if sample is None:
        seen = set()
        for digits in itertools.product((2, 3), repeat=n):
            code = BoundaryCode(digits)
            if 0 <= code.f5 <= 5:
                seen.add(canonical_rotation(code))
        return sorted(seen)
    out = []
    while len(out) < sample:
        code = BoundaryCode(rng.choice((2, 3)) for _ in range(n))
        if 0 <= code.f5 <= 5:
            out.append(code)
    return out


def bench_table(sizes: Sequence[int], sample: Optional[int] = None, seed: int = 0,
                budget: Optional[int] = None) -> list[dict]:
    """One row per ``(n, f5)``: corpus size, solver and oracle cost, agreement."""
    rng = random.Random(seed)
    rows = {}
    for n in sizes:
        for code in _corpus(n, sample, rng):
            t0 = time.perf_counter()
            ans = decide(code, SolverConfig(want_witness=False))
            t1 = time.perf_counter()
            truth = bool(fill_search(code, SearchConfig(face_budget=budget, witness_cap=1)))
            t2 = time.perf_counter()
            row = rows.setdefault((n, code.f5), dict(n=n, f5=code.f5, codes=0, yes=0, solver_ms=0.0,
                                                     oracle_ms=0.0, nodes=0, max_nodes=0, agree=0))
            row["codes"] += 1
            row["yes"] += truth
            row["solver_ms"] += (t1 - t0) * 1000
            row["oracle_ms"] += (t2 - t1) * 1000
            row["nodes"] += ans.stats["nodes"]
            row["max_nodes"] = max(row["max_nodes"], ans.stats["nodes"])
            row["agree"] += ans.exists == truth
    return [rows[k] for k in sorted(rows)]


def cmd_bench(args) -> int:
    sizes = _sizes(args.sizes)
    rows = bench_table(sizes, args.sample, args.seed or 0, args.budget)
    if args.format == "record":
        _emit(args, "".join(_record(**{k: round(v, 3) if isinstance(v, float) else v for k, v in r.items()}) + "\n"
                            for r in rows))
        return 0
    head = f"{'n':>3} {'f5':>3} {'codes':>6} {'yes':>5} {'solver_ms':>10} {'oracle_ms':>10} {'nodes':>8} {'max':>6} {'agree':>6}"
    lines = [head]
    for r in rows:
        lines.append(f"{r['n']:>3} {r['f5']:>3} {r['codes']:>6} {r['yes']:>5} {r['solver_ms']:>10.1f} "
                     f"{r['oracle_ms']:>10.1f} {r['nodes']:>8} {r['max_nodes']:>6} {r['agree']:>6}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _sizes(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="penthex", description="Fullerene patch boundary codes")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "record", "drawing"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--conjecture", action="store_true", help="allow f5 > 5 with d = max(n - 3, 10)")
    solver.add_argument("--d", type=int, help="override the path length bound (expert use)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decide", parents=[common, solver], help="is this a patch boundary?")
    p.add_argument("code")
    p = sub.add_parser("witness", parents=[common, solver], help="decide and build a patch")
    p.add_argument("code")
    p = sub.add_parser("count", parents=[common, solver], help="distinct solutions up to a cap")
    p.add_argument("code")
    p.add_argument("--cap", type=int, default=50)
    p = sub.add_parser("oracle", parents=[common], help="brute-force search")
    p.add_argument("code")
    p.add_argument("--budget", type=int, help="face budget (default n^2)")
    p.add_argument("--cap", type=int, default=1000)
    p = sub.add_parser("bench", parents=[common], help="solver against oracle on a corpus")
    p.add_argument("--sizes", default="5-10", help="e.g. 5-10 or 8,12")
    p.add_argument("--sample", type=int, help="random codes per size instead of all")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    return parser


_COMMANDS = {
    "decide": cmd_decide,
    "witness": lambda a: cmd_decide(a, witness=True),
    "count": cmd_count,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", None) is not None and args.cap < 1:
        print("error: --cap must be positive", file=sys.stderr)
        return 1
    if getattr(args, "d", None) is not None and args.d < 1:
        print("error: --d must be at least 1", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, Unsupported) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except PentHexError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
