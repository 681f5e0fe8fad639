"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 divergent input, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from mpmath import mp

from .euler_terms import Combo, parse_combo
from .numeric import (
    CACHE_ENV,
    ConstantCache,
    EvalConfig,
    PrecisionReal,
    TargetUnreachable,
    eval_combo,
    eval_so_direct,
    numeric_equal,
    pi,
)
from .reducer import Divergent, ZetaSoArgs, converges_so, exceptional, reduce_so, witten_c

EXIT_USAGE, EXIT_DIVERGENT, EXIT_VERIFY = 1, 2, 3

log = logging.getLogger("so5zeta")


@dataclass
class TableRow:
    args: ZetaSoArgs
    combo: Combo
    numeric: PrecisionReal | None
    exceptional: bool

    def to_json_obj(self, digits: int) -> dict:
        return {
            "args": list(self.args),
            "terms": self.combo.to_json_obj(),
            "value": self.numeric.decimal(digits) if self.numeric else None,
            "err": f"{float(self.numeric.err):.3e}" if self.numeric else None,
            "exceptional": self.exceptional,
        }


@dataclass
class VerifyRow:
    args: ZetaSoArgs
    exceptional: bool
    reduced: PrecisionReal | None
    direct: PrecisionReal | None
    discrepancy: float
    status: str  # pass, fail or skip
    reason: str = ""


def tuples_of_weight(weight: int, regular: bool = False) -> list[ZetaSoArgs]:
    """Convergent tuples of the given weight in lexicographic order."""
    out = []
    for t in product(range(weight + 1), repeat=4):
        if sum(t) != weight or not converges_so(t):
            continue
        if regular and exceptional(t):
            continue
        out.append(ZetaSoArgs(*t))
    return out


def table_row(args, digits: int, cache: ConstantCache | None = None) -> TableRow:
    combo = reduce_so(args)
    value = eval_combo(combo, EvalConfig(digits), cache) if digits else None
    return TableRow(ZetaSoArgs(*args), combo, value, exceptional(args))


def verify_row(args, tol: float, digits: int = 30, cache: ConstantCache | None = None) -> VerifyRow:
    args = ZetaSoArgs(*args)
    exc = exceptional(args)
    reduced = eval_combo(reduce_so(args), EvalConfig(digits), cache)
    try:
        direct = eval_so_direct(args, target_err=tol / 2)
    except TargetUnreachable as e:
        return VerifyRow(args, exc, reduced, None, math.nan, "skip", str(e))
    with mp.workprec(max(reduced.prec, direct.prec)):
        diff = float(abs(reduced.value - direct.value))
    ok = numeric_equal(reduced, direct) and diff <= tol
    return VerifyRow(args, exc, reduced, direct, diff, "pass" if ok else "fail")


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


class _TableWorker:
    def __init__(self, digits):
        self.digits = digits

    def __call__(self, args):
        return table_row(args, self.digits)


class _VerifyWorker:
    def __init__(self, tol, digits):
        self.tol, self.digits = tol, digits

    def __call__(self, args):
        return verify_row(args, self.tol, self.digits)


# -- argument parsing ------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="so5zeta", description="Reduce and evaluate so(5) Witten zeta values.")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the constant cache")
    p.add_argument("--cache-dir", help=f"constant cache directory (default: ${CACHE_ENV} or ~/.cache/so5zeta)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    r = sub.add_parser("reduce", help="express one value as Euler sums")
    r.add_argument("s", nargs=4, type=_nonneg, metavar="s")
    r.add_argument("--eval", type=_positive, metavar="D", help="also evaluate to D digits")
    r.add_argument("--format", choices=("text", "latex", "json"), default="text")

    t = sub.add_parser("table", help="all convergent values of one weight")
    t.add_argument("weight", type=_positive)
    t.add_argument("--regular", action="store_true", help="drop the two exceptional patterns")
    t.add_argument("--format", choices=("text", "latex", "json"), default="text")
    t.add_argument("--digits", type=_nonneg, default=30, help="0 skips numeric values")
    t.add_argument("--figure", metavar="PATH", help="write a bar chart of the values")
    t.add_argument("--jobs", type=_positive, default=1)

    w = sub.add_parser("witten", help="c(m) with zeta_so(2m,2m,2m,2m) = c(m) pi^(8m)")
    w.add_argument("m", type=_positive)
    w.add_argument("--digits", type=_positive, default=30)

    v = sub.add_parser("verify", help="compare reductions against the direct series")
    v.add_argument("--max-weight", type=_positive, required=True)
    v.add_argument("--min-weight", type=_positive, default=3)
    v.add_argument("--tol", type=_positive_float, default=1e-8)
    v.add_argument("--digits", type=_positive, default=30)
    v.add_argument("--figure", metavar="PATH", help="write a discrepancy plot")
    v.add_argument("--jobs", type=_positive, default=1)

    e = sub.add_parser("eval", help="evaluate an Euler-sum expression such as '3/2*z(b1,2) + z(3)'")
    e.add_argument("expr")
    e.add_argument("--digits", type=_positive, default=30)
    return p


# -- commands --------------------------------------------------------------


def _render(combo: Combo, fmt: str) -> str:
    return combo.to_latex() if fmt == "latex" else combo.to_text()


def cmd_reduce(ns, cache, out) -> int:
    args = ZetaSoArgs(*ns.s)
    try:
        row = table_row(args, ns.eval or 0, cache)
    except Divergent as e:
        print(f"divergent: {e}", file=sys.stderr)
        return EXIT_DIVERGENT
    if ns.format == "json":
        print(json.dumps(row.to_json_obj(ns.eval or 0)), file=out)
        return 0
    print(_render(row.combo, ns.format), file=out)
    if row.numeric is not None:
        print(f"= {row.numeric.decimal(ns.eval)} +/- {float(row.numeric.err):.1e}", file=out)
    return 0


def cmd_table(ns, cache, out) -> int:
    tuples = tuples_of_weight(ns.weight, ns.regular)
    if ns.jobs > 1:
        rows = _map(_TableWorker(ns.digits), tuples, ns.jobs)
    else:
        rows = [table_row(t, ns.digits, cache) for t in tuples]
    regular = sum(not r.exceptional for r in rows)
    if ns.format == "json":
        print(json.dumps([r.to_json_obj(ns.digits) for r in rows], indent=1), file=out)
    elif ns.format == "latex":
        for r in rows:
            lhs = r"\zeta_{so(5)}(" + ",".join(map(str, r.args)) + ")"
            print(f"{lhs} &= {r.combo.to_latex()} \\\\", file=out)
    else:
        print(f"# weight {ns.weight}: {len(rows)} tuples, {regular} regular", file=out)
        print("args\texceptional\tvalue\terr\tcombo", file=out)
        for r in rows:
            value = r.numeric.decimal(ns.digits) if r.numeric else ""
            err = f"{float(r.numeric.err):.1e}" if r.numeric else ""
            print(f"{','.join(map(str, r.args))}\t{int(r.exceptional)}\t{value}\t{err}\t{r.combo}", file=out)
    if ns.figure:
        if not ns.digits:
            print("--figure needs numeric values (digits > 0)", file=sys.stderr)
            return EXIT_USAGE
        from .plotting import plot_table

        plot_table(rows, ns.weight, ns.figure)
        log.info("wrote %s", ns.figure)
    return 0


def cmd_witten(ns, cache, out) -> int:
    c = witten_c(ns.m)
    value = PrecisionReal.exact(c, EvalConfig(ns.digits + 10).prec) * pi(ns.digits + 10) ** (8 * ns.m)
    print(f"{c} * pi^{8 * ns.m} = {value.decimal(ns.digits)}", file=out)
    return 0


def cmd_verify(ns, cache, out) -> int:
    tuples = [t for w in range(ns.min_weight, ns.max_weight + 1) for t in tuples_of_weight(w)]
    if ns.jobs > 1:
        rows = _map(_VerifyWorker(ns.tol, ns.digits), tuples, ns.jobs)
    else:
        rows = [verify_row(t, ns.tol, ns.digits, cache) for t in tuples]
    print("args\texceptional\treduced\tdirect\tdiscrepancy\tstatus", file=out)
    for r in rows:
        red = r.reduced.decimal(15) if r.reduced else ""
        dire = r.direct.decimal(15) if r.direct else r.reason
        print(
            f"{','.join(map(str, r.args))}\t{int(r.exceptional)}\t{red}\t{dire}\t{r.discrepancy:.2e}\t{r.status}",
            file=out,
        )
    checked = [r for r in rows if r.status != "skip"]
    worst = max((r.discrepancy for r in checked), default=0.0)
    failed = [r for r in rows if r.status == "fail"]
    skipped = len(rows) - len(checked)
    print(
        f"# {len(rows)} tuples, {len(failed)} failed, {skipped} skipped, max discrepancy {worst:.2e} (tol {ns.tol:g})",
        file=out,
    )
    if ns.figure:
        from .plotting import plot_verify

        plot_verify(rows, ns.tol, ns.figure)
        log.info("wrote %s", ns.figure)
    return EXIT_VERIFY if failed else 0


def cmd_eval(ns, cache, out) -> int:
    try:
        combo = parse_combo(ns.expr)
    except ValueError as e:
        print(f"so5zeta eval: {e}", file=sys.stderr)
        return EXIT_USAGE
    value = eval_combo(combo, EvalConfig(ns.digits), cache)
    print(f"{combo} = {value.decimal(ns.digits)} +/- {float(value.err):.1e}", file=out)
    return 0


COMMANDS = {
    "reduce": cmd_reduce,
    "table": cmd_table,
    "witten": cmd_witten,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def main(argv=None, out=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s")
    out = out or sys.stdout
    cache = None
    if not ns.no_cache:
        path = f"{ns.cache_dir}/constants.json" if ns.cache_dir else None
        cache = ConstantCache(path)
    try:
        return COMMANDS[ns.cmd](ns, cache, out)
    finally:
        if cache is not None:
            try:
                cache.save()
            except OSError as e:
                log.warning("could not write constant cache: %s", e)


if __name__ == "__main__":
    sys.exit(main())
