"""Command-line front end.

Subcommands: count, max, formula, verify, construct, relax, profile.
Reports are JSON (default) or CSV; identical arguments give identical bytes.

Exit codes: 0 ok, 2 configuration error (bad flags, unknown pattern or
formula), 3 verification failure, 4 exhaustive-search cap exceeded,
5 malformed graph file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import patterns as P
from .coloured_graph import (ColouredCompleteGraph, PatternGraph, construct_partitioned,
                             construct_quasirandom, construct_turan_red, monochromatic, red_cycle)
from .counting import count_copies, count_pattern, count_rrrb_codegree, walk_profile
from .formulas import FORMULAS, evaluate, rand_Q, rrrb_profile
from .search import (MAX_EXHAUSTIVE_N, CapExceeded, brute_force_max, default_workers,
                     graph_from_certificate, level_certificates, local_search_max)

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_CAP, EXIT_GRAPH = 0, 2, 3, 4, 5

_WALK = re.compile(r"^(?:swap:)?alt_walk_(\d+)$")


class ConfigError(Exception):
    pass


class GraphFileError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _emit(args, payload=None, rows=None, header=None):
    """Write JSON (payload) or CSV (header + rows) to --output or stdout."""
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_csv_cell(v) for v in r])
        text = buf.getvalue()
    else:
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def _pattern(args) -> PatternGraph:
    if getattr(args, "edges", None):
        try:
            return PatternGraph.parse(args.edges)
        except ValueError as exc:
            raise ConfigError(f"bad --edges literal: {exc}") from exc
    if not getattr(args, "pattern", None):
        raise ConfigError("give --pattern NAME or --edges LITERAL")
    try:
        return P.get_pattern(args.pattern)
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc.args[0]) if exc.args else str(exc)) from exc


def _walk_length(args):
    if getattr(args, "edges", None) or not getattr(args, "pattern", None):
        return None
    m = _WALK.match(args.pattern)
    return int(m.group(1)) if m else None


def _n_values(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    if args.n_range:
        try:
            lo, hi = (int(x) for x in args.n_range.split(":"))
        except ValueError as exc:
            raise ConfigError("--n-range must look like LO:HI") from exc
        if lo > hi:
            raise ConfigError("--n-range LO must not exceed HI")
        return list(range(lo, hi + 1))
    raise ConfigError("give --n or --n-range")


def _read_graph(path: str) -> ColouredCompleteGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read graph file {path}: {exc}") from exc
    try:
        return ColouredCompleteGraph.from_text(text)
    except ValueError as exc:
        raise GraphFileError(f"malformed graph file {path}: {exc}") from exc


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigError(f"{args.kind} needs {', '.join(missing)}")


def _construct(args) -> ColouredCompleteGraph:
    kind = args.kind
    _need(args, "n")
    try:
        if kind == "partitioned":
            _need(args, "a")
            return construct_partitioned(args.n, args.a, args.colour)
        if kind == "quasirandom":
            _need(args, "sigma", "seed")
            return construct_quasirandom(args.n, args.sigma, args.seed)
        if kind == "turan":
            _need(args, "parts")
            return construct_turan_red(args.n, args.parts)
        if kind == "monochromatic":
            return monochromatic(args.n, args.colour)
        if kind == "red_cycle":
            return red_cycle(args.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown construction {kind!r}")


def _host(args) -> ColouredCompleteGraph:
    if args.graph:
        return _read_graph(args.graph)
    if args.kind:
        return _construct(args)
    raise ConfigError("give --graph FILE or --kind CONSTRUCTION")


def _add_construct_flags(p, required_kind=False):
    p.add_argument("--kind", required=required_kind,
                   choices=["partitioned", "quasirandom", "turan", "monochromatic", "red_cycle"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int, help="part size for partitioned")
    p.add_argument("--colour", default="R", choices=["R", "B"], help="bipartite / monochromatic colour")
    p.add_argument("--sigma", type=float, help="red probability for quasirandom")
    p.add_argument("--seed", type=int)
    p.add_argument("--parts", type=int, help="number of parts for turan")


def _add_output_flags(p, csv_ok=True):
    p.add_argument("--format", choices=["json", "csv"] if csv_ok else ["json"], default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


# ---------------------------------------------------------------------------
# subcommands

def cmd_count(args) -> int:
    G = _host(args)
    t = _walk_length(args)
    if t is not None:
        prof = walk_profile(G.swap_colours() if args.pattern.startswith("swap:") else G, t)
        payload = {"pattern": args.pattern, "n": G.n, "count": prof.W[t], "counter": "walk_profile"}
    else:
        H = _pattern(args)
        c = count_pattern(H, G)
        if args.check:
            g = count_copies(H, G)
            if g != c:
                raise AssertionError(f"counter disagreement: specialised {c}, generic {g}")
        payload = {"pattern": H.name or H.to_literal(), "edges": H.to_literal(), "n": G.n, "count": c}
    _emit(args, payload, [[payload["pattern"], payload["n"], payload["count"]]], ["pattern", "n", "count"])
    return EXIT_OK


def _walk_max(t: int, n: int, swap: bool, workers):
    best, ext = -1, []
    for c in level_certificates(n, workers):
        G = graph_from_certificate(c, n)
        w = walk_profile(G.swap_colours() if swap else G, t).W[t]
        if w > best:
            best, ext = w, [G]
        elif w == best:
            ext.append(G)
    return best, ext


def cmd_max(args) -> int:
    workers = args.threads
    t = _walk_length(args)
    results, rows = [], []
    for n in _n_values(args):
        if t is not None:
            if args.method != "exhaustive":
                raise ConfigError("walk maxima are only available by exhaustive search")
            if n > MAX_EXHAUSTIVE_N:
                raise CapExceeded(f"exhaustive search is capped at n = {MAX_EXHAUSTIVE_N}")
            best, ext = _walk_max(t, n, args.pattern.startswith("swap:"), workers)
            res = {"pattern": {"name": args.pattern}, "n": n, "max_value": best,
                   "extremal": [G.colour_string for G in ext], "method": "exhaustive"}
            results.append(res)
            rows.append([args.pattern, n, best, len(ext), "exhaustive"])
            continue
        H = _pattern(args)
        if args.method == "exhaustive":
            r = brute_force_max(H, n, workers)
        else:
            if args.seed is None:
                raise ConfigError("local search needs --seed")
            if n < H.h:
                raise ConfigError("n must be at least the pattern size")
            r = local_search_max(H, n, args.seed, args.restarts)
        results.append(r.as_json())
        rows.append([H.name or H.to_literal(), n, r.max_value, len(r.extremal), r.method])
    payload = results[0] if len(results) == 1 else {"results": results}
    _emit(args, payload, rows, ["pattern", "n", "max_value", "extremal_count", "method"])
    return EXIT_OK


def cmd_formula(args) -> int:
    if args.name not in FORMULAS:
        raise ConfigError(f"unknown formula {args.name!r}; known: {', '.join(sorted(FORMULAS))}")
    params = {"n": args.n, "t": args.t, "a": args.a, "sigma": args.sigma, "epsilon": args.epsilon}
    try:
        v = evaluate(args.name, **params)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    j = v.as_json()
    _emit(args, j, [[j["name"], j["exact"], j["float"]]], ["name", "exact", "float"])
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_suite
    ids = None
    if args.only:
        try:
            ids = {int(x) for x in args.only.split(",")}
        except ValueError as exc:
            raise ConfigError("--only takes comma-separated criterion numbers") from exc
        unknown = ids - {i for i, _, _ in CHECKS}
        if unknown:
            raise ConfigError(f"no criteria {sorted(unknown)}")
    results = run_suite(ids, args.threads, echo=lambda line: print(line, file=sys.stderr, flush=True))
    passed = all(r.passed for r in results)
    summary = f"{sum(r.passed for r in results)}/{len(results)} criteria passed"
    print(summary, file=sys.stderr)
    if args.output:
        payload = {"suite": args.suite, "passed": passed, "criteria": [r.as_json() for r in results]}
        if not args.timings:
            for c in payload["criteria"]:
                c.pop("seconds")
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_construct(args) -> int:
    G = _construct(args)
    text = G.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_relax(args) -> int:
    from . import relaxation as X
    if args.mode == "equalize":
        G = _host(args)
        try:
            gamma = Fraction(args.gamma)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError("--gamma must be a positive rational such as 1/10") from exc
        if gamma <= 0:
            raise ConfigError("--gamma must be positive")
        v = X.vector_from_graph(G, exact=True)
        tr = X.equalize(v, gamma)
        rows = [[k, float(s), float(f)] for k, (s, f) in enumerate(tr.steps)]
        payload = {"n": G.n, "gamma": gamma, "steps": len(tr.steps) - 1, "terminated": tr.terminated,
                   "invariant_violations": X.check_trace(tr, G.n),
                   "Sigma": [r[1] for r in rows], "f": [r[2] for r in rows]}
        _emit(args, payload, rows, ["step", "Sigma", "f"])
    elif args.mode == "g-profile":
        sigmas = _sweep(args.sigmas)
        rows = []
        for s in sigmas:
            ts = X.tau_star(s)
            rows.append([s, ts, X.g_sigma(s, ts), float(rrrb_profile(round(s, 12)))])
        payload = {"crossover": X.profile_crossover(),
                   "rows": [dict(zip(["sigma", "tau_star", "g_max", "rrrb_profile"], r)) for r in rows]}
        _emit(args, payload, rows, ["sigma", "tau_star", "g_max", "rrrb_profile"])
    elif args.mode == "tradeoff":
        gap, pts = X.tradeoff_gap_grid()
        payload = {"tradeoff_min_gap": gap, "grid_points": pts, "moreover_min_slack": X.moreover_bound_grid()}
        _emit(args, payload)
    elif args.mode == "lambda":
        x, val = X.optimize_lambda_Q()
        payload = {"argmax": list(x), "value": val, "q_strict_20": X.q_strict_margins(20, 20, 20)}
        _emit(args, payload)
    return EXIT_OK


def _sweep(spec: str) -> list[float]:
    try:
        lo, hi, step = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise ConfigError("sweeps look like START:STOP:STEP") from exc
    if step <= 0 or lo > hi or lo < 0 or hi > 1:
        raise ConfigError("need 0 <= START <= STOP <= 1 and STEP > 0")
    k = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + i * step, 12) for i in range(k + 1)]


def cmd_profile(args) -> int:
    if args.seed is None:
        raise ConfigError("profile builds random graphs and needs --seed")
    if args.n < 4:
        raise ConfigError("profile needs --n >= 4")
    n = args.n
    rows = []
    for s in _sweep(args.sigmas):
        G = construct_quasirandom(n, s, args.seed)
        c = count_rrrb_codegree(G)
        rows.append([s, n, args.seed, c, c / n ** 4, float(rrrb_profile(s)),
                     c / math.comb(n, 4), float(rand_Q(s))])
    header = ["sigma", "n", "seed", "rrrb_count", "rrrb_over_n4", "rrrb_profile", "rrrb_over_binom4", "rand_Q"]
    _emit(args, {"rows": [dict(zip(header, r)) for r in rows]}, rows, header)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="redblue", description=__doc__.split("\n")[0])
    ap.add_argument("--threads", type=int, default=None,
                    help="worker processes for exhaustive generation (default $REDBLUE_THREADS or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count copies of a pattern in a graph")
    p.add_argument("--pattern")
    p.add_argument("--edges", help='pattern literal such as "1-2:R,2-3:B"')
    p.add_argument("--graph", help="graph file")
    p.add_argument("--check", action="store_true", help="cross-check against the generic counter")
    _add_construct_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("max", help="max copies over all colourings of K_n")
    p.add_argument("--pattern")
    p.add_argument("--edges")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="LO:HI inclusive")
    p.add_argument("--method", choices=["exhaustive", "local"], default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=10)
    _add_output_flags(p)
    p.set_defaults(func=cmd_max)

    p = sub.add_parser("formula", help="evaluate a closed form")
    p.add_argument("--name", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--sigma", help="decimal or rational, e.g. 0.75 or 3/4")
    p.add_argument("--epsilon")
    _add_output_flags(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--suite", choices=["primary"], default="primary")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--output", "-o", help="JSON report path")
    p.add_argument("--timings", action="store_true", help="include run times in the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="write a graph file")
    _add_construct_flags(p, required_kind=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("relax", help="relaxation experiments")
    p.add_argument("--mode", choices=["equalize", "g-profile", "tradeoff", "lambda"], required=True)
    p.add_argument("--graph")
    p.add_argument("--gamma", default="1/10")
    p.add_argument("--sigmas", default="0.5:1:0.05", help="START:STOP:STEP for g-profile")
    _add_construct_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("profile", help="sigma sweep of RRRB counts against the baselines")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--sigmas", default="0.5:1:0.05")
    _add_output_flags(p)
    p.set_defaults(func=cmd_profile)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = default_workers()
    elif args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GraphFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRAPH
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
