"""Command-line interface: construct, evaluate, sweep, table, search, verify."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as C
from .bec_exact import TieBreak, error_probability, oracle_error_probability
from .bounds import all_bounds
from .checks import SUITES
from .code_model import Codebook, as_type
from .distances import distance_profile
from .io import load_code, package_version, render_csv, save_code
from .search import (
    SearchConfig,
    deletion_annealing,
    exhaustive_linear_search,
    exhaustive_search,
    permuted_concatenation_search,
    simulated_annealing,
)

FAMILIES = (
    "repetition", "optimal-m3", "optimal-m4", "conj-m5", "conj-m6", "fair-weak-flip", "fair-linear",
    "hadamard-h1", "hadamard-h1p", "hadamard-h2", "hadamard-h3", "gfwf-m8", "bsc-optimal",
)


class UsageError(Exception):
    pass


def build_family(family: str, m=None, n=None, k=None, order=None):
    def need(val, flag):
        if val is None:
            raise UsageError(f"family {family!r} needs --{flag}")
        return val

    if family == "repetition":
        return C.repetition(need(n, "n"))
    if family in ("optimal-m3", "optimal-m4"):
        return C.optimal_m3m4(int(family[-1]), need(n, "n"))
    if family in ("conj-m5", "conj-m6"):
        return C.conjectured_m5m6(int(family[-1]), need(n, "n"))
    if family == "fair-weak-flip":
        return C.fair_weak_flip(need(m, "m"), need(n, "n"))
    if family == "fair-linear":
        if k is None and m is not None:
            if m & (m - 1):
                raise UsageError("fair linear codes need M to be a power of two")
            k = m.bit_length() - 1
        return C.fair_linear(need(k, "k"), need(n, "n"))
    if family.startswith("hadamard-"):
        return C.hadamard_code(family.split("-", 1)[1], need(order, "order"))
    if family == "gfwf-m8":
        return C.generalized_fair_weak_flip_m8(need(n, "n"))
    if family == "bsc-optimal":
        return C.bsc_optimal_type(need(m, "m"), need(n, "n"))
    raise UsageError(f"unknown family {family!r}")


def _profile_line(code) -> str:
    p = distance_profile(code)
    return "d_min = (" + ", ".join(str(d) for d in p.min_rwise) + ")"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    code = build_family(args.family, args.m, args.n, args.k, args.order)
    t = as_type(code)
    print(f"M = {t.m}, n = {t.n}")
    print("type support: " + json.dumps({str(j): c for j, c in t.support().items()}))
    print(_profile_line(t))
    if args.out:
        for p in save_code(code, args.out):
            print(f"wrote {p}")
    elif isinstance(code, Codebook):
        sys.stdout.write(code.to_text())
    return 0


def cmd_evaluate(args) -> int:
    code = load_code(args.code)
    res = error_probability(code, args.delta)
    report = {"delta": args.delta, "p_error": res.p_error}
    if args.oracle:
        cb = code if isinstance(code, Codebook) else None
        orc = oracle_error_probability(cb if cb is not None else code, args.delta, args.tie_break)
        report.update(oracle_p_error=orc.p_error, **{"lambda": list(orc.per_message)},
                      abs_diff=abs(orc.p_error - res.p_error))
    if args.format == "json":
        _emit(json.dumps(report) + "\n", args.out)
    else:
        lines = [f"P_e = {res.p_error!r}"]
        if args.oracle:
            lines += [f"oracle P_e = {report['oracle_p_error']!r}",
                      "lambda = " + " ".join(repr(x) for x in report["lambda"]),
                      f"|difference| = {report['abs_diff']:.3e}"]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def parse_range(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _sweep_code(family: str, m: int, n: int):
    if family == "optimal":
        if m in (3, 4):
            return C.optimal_m3m4(m, n)
        if m in (5, 6):
            return C.conjectured_m5m6(m, n)
        raise UsageError("family 'optimal' is only defined for M = 3..6")
    return build_family(family, m, n)


SWEEP_HEADER = ["n", "delta", "exact", "sgb_lower", "sgb_upper", "ppv_lower", "ppv_upper", "family"]


def cmd_sweep(args) -> int:
    ns = parse_range(args.n_range)
    rows = []
    for n in ns:
        for fam in args.families.split(","):
            try:
                code = _sweep_code(fam, args.m, n)
            except ValueError:
                continue  # family undefined at this blocklength
            b = all_bounds(args.m, n, args.delta)
            row = {"n": n, "delta": args.delta, "exact": error_probability(code, args.delta).p_error,
                   "ppv_lower": b.ppv_lower, "ppv_upper": b.ppv_upper, "family": fam}
            if not args.no_sgb:
                row.update(sgb_lower=b.sgb_lower, sgb_upper=b.sgb_upper)
            rows.append(row)
    meta = {"version": package_version(), "m": args.m, "delta": args.delta}
    if args.format == "json":
        _emit(json.dumps({"meta": meta, "rows": rows}) + "\n", args.out)
    else:
        _emit(render_csv(SWEEP_HEADER, rows, meta), args.out)
    return 0


def _config(args) -> SearchConfig:
    return SearchConfig(seed=args.seed, t_start=args.t_start, t_freeze=args.t_freeze, alpha=args.alpha,
                        moves_per_temp=args.moves, restarts=args.restarts,
                        max_iterations=args.max_iterations)


def table_rows(m: int, ns, delta: float, cfg: SearchConfig) -> tuple[list[str], list[dict]]:
    if m not in (8, 16):
        raise UsageError("tables are defined for M = 8 and M = 16")
    rmax = m // 2
    header = ["n"] + [f"weak_d{r}" for r in range(2, rmax + 1)] + [f"lin_d{r}" for r in range(2, rmax + 1)]
    header += ["pe_weak", "pe_lin", "weak_better"]
    rows = []
    base16 = lin30 = None
    for n in ns:
        if m == 8:
            weak = simulated_annealing(8, n, delta, cfg)
            lin = exhaustive_linear_search(3, n, delta)
        elif n % 15 == 0:
            weak = permuted_concatenation_search(4, n // 15, delta, cfg)
            lin_code = C.fair_linear(4, n)
            lin = None
        else:
            if n > 30:
                raise UsageError("M = 16 blocklengths above 30 must be multiples of 15")
            base16 = base16 or permuted_concatenation_search(4, 2, delta, cfg).best
            lin30 = lin30 or C.fair_linear(4, 30)
            weak = deletion_annealing(base16, n, delta, cfg)
            lin = deletion_annealing(lin30, n, delta, cfg)
        lin_code = lin.best if lin is not None else lin_code
        pw = weak.best_p_error
        pl = error_probability(lin_code, delta).p_error
        row = {"n": n, "pe_weak": pw, "pe_lin": pl, "weak_better": pw < pl}
        for r, d in enumerate(distance_profile(weak.best).min_rwise, start=2):
            row[f"weak_d{r}"] = d
        for r, d in enumerate(distance_profile(lin_code).min_rwise, start=2):
            row[f"lin_d{r}"] = d
        rows.append(row)
    return header, rows


def cmd_table(args) -> int:
    cfg = _config(args)
    ns = parse_range(args.n_list)
    header, rows = table_rows(args.m, ns, args.delta, cfg)
    meta = {"version": package_version(), "m": args.m, "delta": args.delta, "seed": args.seed}
    if args.format == "json":
        _emit(json.dumps({"meta": meta, "rows": rows}) + "\n", args.out)
    else:
        _emit(render_csv(header, rows, meta), args.out)
    return 0


def cmd_search(args) -> int:
    cfg = _config(args)
    if args.method == "exhaustive":
        rep = exhaustive_search(args.m, args.n, args.delta, args.restrict)
    elif args.method == "linear":
        rep = exhaustive_linear_search(args.k, args.n, args.delta)
    elif args.method == "sa":
        rep = simulated_annealing(args.m, args.n, args.delta, cfg)
    elif args.method == "concat":
        rep = permuted_concatenation_search(args.k, args.kappa, args.delta, cfg, args.trials)
    else:
        if not args.code:
            raise UsageError("deletion search needs --code")
        rep = deletion_annealing(load_code(args.code), args.n, args.delta, cfg)
    text = json.dumps(rep.to_json()) + "\n"
    _emit(text, args.out)
    if args.out:
        print(f"P_e = {rep.best_p_error!r}  {_profile_line(rep.best)}")
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        res = SUITES[name]()
        print(f"{'PASS' if res.passed else 'FAIL'} {name}: {res.detail}")
        failed += not res.passed
    return 1 if failed else 0


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--m", type=int, help="number of codewords")
    p.add_argument("--n", type=int, help="blocklength")
    p.add_argument("--delta", type=float, default=0.3, help="erasure probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def _search_flags(p: argparse.ArgumentParser) -> None:
    d = SearchConfig()
    p.add_argument("--restarts", type=int, default=d.restarts)
    p.add_argument("--alpha", type=float, default=d.alpha)
    p.add_argument("--t-start", type=float, default=d.t_start)
    p.add_argument("--t-freeze", type=float, default=d.t_freeze)
    p.add_argument("--moves", type=int, default=None, help="moves per temperature (default 200 n)")
    p.add_argument("--max-iterations", type=int, default=d.max_iterations)


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    parser = argparse.ArgumentParser(prog="weakflip", description=__doc__)
    parser.add_argument("--version", action="version", version=package_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[g], help="build a code family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--k", type=int, help="dimension for fair-linear")
    p.add_argument("--order", type=int, help="Hadamard order")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("evaluate", parents=[g], help="exact error probability of a code file")
    p.add_argument("code", help="code JSON or codebook text")
    p.add_argument("--oracle", action="store_true", help="also run brute-force ML decoding (n <= 14)")
    p.add_argument("--tie-break", choices=[t.value for t in TieBreak], default="lowest")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", parents=[g], help="exact P_e and bounds over a blocklength range")
    p.add_argument("--n-range", default="2:40", help="e.g. 2:40 or 3,5,7")
    p.add_argument("--families", default="optimal", help="comma-separated family names")
    p.add_argument("--no-sgb", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", parents=[g], help="best weak flip vs best linear distance table")
    p.add_argument("--n-list", required=True, help="e.g. 8,10,12,14")
    _search_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", parents=[g], help="run one code search")
    p.add_argument("method", choices=("exhaustive", "linear", "sa", "concat", "delete"))
    p.add_argument("--restrict", choices=("all", "weak-flip"), default="all")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--kappa", type=int, default=2)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--code", help="starting code for deletion search")
    _search_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[g], help="run a named verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
