"""Acceptance battery.

Each check returns a CheckResult; run_suite runs them in order and
returns the list.  Checks are deterministic (fixed seeds).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import patterns as P
from .coloured_graph import (ColouredCompleteGraph, assess_balance, construct_partitioned,
                             construct_quasirandom, turan_part_sizes)
from .counting import (count_alternating_cycles, count_copies, count_pattern, count_rbrb_antipodal,
                       count_rrbb_codegree, count_rrrb_codegree, count_walks_bruteforce,
                       matrix_rbrb, matrix_rrbb, matrix_rrrb, walk_profile)
from .formulas import (extension_bound, goodman_max, k112_tripartite_max, rbrb_max, rrbb_best_value,
                       rrbb_value, unbalanced_walk_bound)
from .relaxation import (canonical_score, check_trace, equalize, is_canonical_grid, moreover_bound_grid,
                         optimize_lambda_Q, q_strict_margins, small_inequality_checks,
                         tradeoff_gap_grid, vector_from_graph, vector_from_t_offsets,
                         complete_multipartite_red)
from .search import brute_force_max, graph_certificate, monotonicity_ratio_ok

SEED = 20240601


@dataclass
class CheckResult:
    id: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:2d} {self.title} ({self.seconds:.1f}s)"

    def as_json(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": _jsonable(self.detail)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(SEED + offset))


# ---------------------------------------------------------------------------

def check_rbrb_exact(workers=None) -> tuple[bool, dict]:
    H = P.rbrb_c4()
    rows, ok = [], True
    for n in range(4, 9):
        res = brute_force_max(H, n, workers)
        expected_set = {graph_certificate(construct_partitioned(n, n // 2, c)) for c in "RB"}
        got_set = {graph_certificate(G) for G in res.extremal}
        row = {"n": n, "max": res.max_value, "formula": rbrb_max(n),
               "extremal": len(res.extremal), "extremal_is_balanced_partitioned": got_set == expected_set}
        ok &= res.max_value == rbrb_max(n) and got_set == expected_set
        rows.append(row)
    return ok, {"rows": rows}


def check_goodman(workers=None) -> tuple[bool, dict]:
    # every bichromatic triangle holds exactly two red-blue 2-paths, so the
    # path maximum is twice the triangle count
    H = P.rbr_path()
    rows, ok = [], True
    for n in range(3, 9):
        m = brute_force_max(H, n, workers).max_value
        row = {"n": n, "max_paths": m, "half_max": Fraction(m, 2), "goodman": goodman_max(n)}
        ok &= Fraction(m, 2) == goodman_max(n)
        rows.append(row)
    return ok, {"rows": rows}


def check_walk_equality() -> tuple[bool, dict]:
    from .coloured_graph import red_cycle
    prof = walk_profile(red_cycle(5), 20)
    bad = [t for t in range(1, 21) if prof.W[t] != 10 * 2 ** t]
    return not bad, {"W20": prof.W[20], "mismatches": bad}


def check_oracles(graphs: int = 500) -> tuple[bool, dict]:
    rng = _rng(4)
    pats = {"rbrb": P.rbrb_c4(), "rrbb": P.rrbb_c4(), "rrrb": P.rrrb_c4(),
            "c4": P.alt_cycle(4), "c6": P.alt_cycle(6)}
    mismatches, walk_checks = [], 0
    for g in range(graphs):
        n = int(rng.integers(4, 13))
        sigma = float(rng.uniform(0.1, 0.9))
        G = construct_quasirandom(n, sigma, int(rng.integers(0, 2 ** 31)))
        R = G.red_matrix()
        gen = {k: count_copies(H, G) for k, H in pats.items()}
        special = {
            "rbrb": [count_rbrb_antipodal(G), matrix_rbrb(R)],
            "rrbb": [count_rrbb_codegree(G), matrix_rrbb(R)],
            "rrrb": [count_rrrb_codegree(G), matrix_rrrb(R)],
            "c4": [count_alternating_cycles(G, 4)],
            "c6": [count_alternating_cycles(G, 6)],
        }
        for k, vals in special.items():
            if any(v != gen[k] for v in vals):
                mismatches.append({"graph": g, "n": n, "pattern": k, "generic": gen[k], "special": vals})
        if n <= 8:
            prof = walk_profile(G, 4)
            for t in range(1, 5):
                walk_checks += 1
                if prof.W[t] != count_walks_bruteforce(G, t):
                    mismatches.append({"graph": g, "n": n, "walks": t})
    return not mismatches, {"graphs": graphs, "walk_checks": walk_checks, "mismatches": mismatches[:10]}


def check_ccext(workers=None) -> tuple[bool, dict]:
    H = P.ccext()
    rows, ok = [], True
    for n in range(4, 8):
        m = brute_force_max(H, n, workers).max_value
        formula = (n * n // 4) * ((n - 2) ** 2 // 4)
        bound = extension_bound(rbrb_max(n), 2, 1)
        ok &= m == formula == bound
        rows.append({"n": n, "max": m, "formula": formula, "extension_bound": bound})
    return ok, {"rows": rows}


def check_rrrb_asymptotic(n: int = 400, seed: int = SEED) -> tuple[bool, dict]:
    rows, ok = [], True
    for sigma in (0.65, 0.75, 0.90):
        G = construct_quasirandom(n, sigma, seed)
        c = count_rrrb_codegree(G)
        ratio = c / (0.5 * sigma ** 3 * (1 - sigma) * n ** 4)
        row = {"sigma": sigma, "count": c, "profile_ratio": ratio}
        ok &= 0.93 <= ratio <= 1.07
        if sigma == 0.75:
            row["constant_ratio"] = c / (27 / 512 * n ** 4)
            ok &= 0.95 <= row["constant_ratio"] <= 1.05
        rows.append(row)
    return ok, {"n": n, "seed": seed, "rows": rows}


def _equalize_inputs(count: int = 50):
    rng = _rng(7)
    out = []
    for k in range(count):
        gamma = Fraction(1, int(rng.integers(4, 16)))
        if k % 2 == 0:
            n = int(rng.integers(5, 11))
            G = construct_quasirandom(n, float(rng.uniform(0.2, 0.8)), int(rng.integers(0, 2 ** 31)))
            v = vector_from_graph(G, exact=True)
        else:
            n = int(rng.integers(4, 9))
            d = [Fraction(int(x), 20) for x in rng.integers(0, 21, size=n)]
            m = n * (n - 1) // 2
            offs = [int(x) for x in rng.integers(-12, 13, size=m)]
            offs[-1] -= sum(offs)
            v = vector_from_t_offsets(d, [Fraction(o, 20) for o in offs])
        out.append((v, gamma))
    return out


def check_equalization(count: int = 50) -> tuple[bool, dict]:
    problems, steps = [], []
    for k, (v, gamma) in enumerate(_equalize_inputs(count)):
        tr = equalize(v, gamma)
        bad = check_trace(tr, v.n)
        if bad or tr.final.in_S() != v.in_S():
            problems.append({"vector": k, "problems": bad[:3]})
        steps.append(len(tr.steps) - 1)
    return not problems, {"vectors": count, "total_steps": sum(steps), "max_steps": max(steps),
                          "problems": problems}


def check_tradeoff() -> tuple[bool, dict]:
    gap, points = tradeoff_gap_grid()
    more = moreover_bound_grid()
    ok = points >= 10 ** 6 and gap >= -1e-12 and more >= -1e-12
    return ok, {"tradeoff_min_gap": gap, "grid_points": points, "moreover_min_slack": more}


def check_canonical_score() -> tuple[bool, dict]:
    H = P.PatternGraph(5, [(0, 2, "R"), (0, 3, "R"), (0, 4, "R"), (1, 2, "R"), (1, 3, "R"),
                           (1, 4, "R"), (2, 3, "B")])
    score = canonical_score(H, 0.99, 0.01)
    canon = is_canonical_grid(P.rrbb_c4(), eta=0.01)
    return abs(score - 5.8806) <= 1e-9 and canon, {"score": score, "rrbb_canonical": canon}


def check_lambda_q() -> tuple[bool, dict]:
    x, val = optimize_lambda_Q()
    ok = (len(x) == 3 and all(abs(c - 1 / 3) <= 1e-6 for c in x) and abs(val - 4 / 27) <= 1e-9)
    q = q_strict_margins(20, 20, 20)
    ok &= abs(q["inter_ratio"] - 1) <= 0.1 and abs(q["intra_ratio"] - 1) <= 0.1 and q["s2_all_positive"]
    return ok, {"argmax": x, "value": val, "inter_ratio": q["inter_ratio"],
                "intra_ratio": q["intra_ratio"], "s2_gaps": q["s2_gaps"]}


def _unbalanced_constructions(count: int = 50):
    rng = _rng(11)
    out = []
    while len(out) < count:
        n = int(rng.integers(6, 31))
        kind = len(out) % 3
        if kind == 0:
            G = construct_quasirandom(n, float(rng.choice([rng.uniform(0.0, 0.3), rng.uniform(0.7, 1.0)])),
                                      int(rng.integers(0, 2 ** 31)))
        elif kind == 1:
            G = construct_partitioned(n, int(rng.integers(0, n // 3 + 1)), str(rng.choice(["R", "B"])))
        else:
            # red clique on a random subset, blue elsewhere
            k = int(rng.integers(0, n + 1))
            G = ColouredCompleteGraph.from_red_edges(n, [(i, j) for i in range(k) for j in range(i + 1, k)])
        if assess_balance(G).epsilon > 0:
            out.append(G)
    return out


def check_properties(workers=None) -> tuple[bool, dict]:
    ineq = small_inequality_checks(SEED, 10 ** 4)
    ok = all(v["violations"] == 0 for v in ineq.values())
    swap_bad, mono_bad = [], []
    for H in map(P.get_pattern, P.TABLE_FOUR_VERTEX):
        prev = None
        for n in range(4, 9):
            m = brute_force_max(H, n, workers).max_value
            if n <= 7:
                ms = brute_force_max(H.swap(), n, workers).max_value
                if ms != m:
                    swap_bad.append({"pattern": H.name, "n": n, "max": m, "swapped": ms})
            if n >= 5 and not monotonicity_ratio_ok(m, prev, n, H.h):
                mono_bad.append({"pattern": H.name, "n": n})
            prev = m
    stab_bad, checked = [], 0
    for G in _unbalanced_constructions():
        eps = assess_balance(G).epsilon
        prof = walk_profile(G, 8)
        for t in range(2, 9):
            checked += 1
            if prof.W[t] > unbalanced_walk_bound(G.n, t, eps):
                stab_bad.append({"n": G.n, "t": t, "epsilon": eps})
    ok &= not swap_bad and not mono_bad and not stab_bad
    return ok, {"inequalities": ineq, "swap_violations": swap_bad, "monotonicity_violations": mono_bad,
                "stability_checks": checked, "stability_violations": stab_bad}


def check_constructions(workers=None, max_n: int = 60) -> tuple[bool, dict]:
    rrbb = P.rrbb_c4()
    ccextt = P.ccextt()
    bad = []
    for n in range(4, max_n + 1):
        for a in range(0, n // 2 + 1):
            c = count_pattern(rrbb, construct_partitioned(n, a))
            if c != rrbb_value(n, a):
                bad.append({"n": n, "a": a, "count": c, "formula": rrbb_value(n, a)})
        c = count_pattern(ccextt, complete_multipartite_red(turan_part_sizes(n, 3)))
        if c != k112_tripartite_max(n):
            bad.append({"n": n, "k112": c, "formula": k112_tripartite_max(n)})
    report, below = [], []
    for name, H, value in (("rrbb_c4", rrbb, rrbb_best_value), ("ccextt", ccextt, k112_tripartite_max),
                           ("rbrb_c4", P.rbrb_c4(), rbrb_max)):
        for n in range(4, 9):
            m = brute_force_max(H, n, workers).max_value
            cons = value(n)
            if m < cons:
                below.append({"pattern": name, "n": n, "brute": m, "construction": cons})
            elif m > cons:
                report.append({"pattern": name, "n": n, "brute": m, "construction": cons})
    return not bad and not below, {"formula_mismatches": bad[:10], "brute_below_construction": below,
                                   "strict_excess_report": report}


CHECKS = [
    (1, "alternating C4 maximum and extremal set, 4 <= n <= 8", check_rbrb_exact),
    (2, "red-blue 2-path maximum vs bichromatic triangle bound, 3 <= n <= 8", check_goodman),
    (3, "alternating walks in the red 5-cycle, t <= 20", check_walk_equality),
    (4, "specialised counters vs generic counter on 500 random graphs", check_oracles),
    (5, "C4 plus red chord maximum, 4 <= n <= 7", check_ccext),
    (6, "RRRB count on quasirandom K_400", check_rrrb_asymptotic),
    (7, "equalisation trace invariants on 50 vectors", check_equalization),
    (8, "RRBB tradeoff gap grid and profile bound grid", check_tradeoff),
    (9, "canonical score pin and RRBB canonical grid", check_canonical_score),
    (10, "lambda_Q optimum and Q-strict margins", check_lambda_q),
    (11, "inequalities, colour-swap symmetry, monotonicity, stability", check_properties),
    (12, "constructions vs formulas, n <= 60; brute force vs constructions, n <= 8",
     check_constructions),
]

_TAKES_WORKERS = {1, 2, 5, 11, 12}


def run_check(cid: int, workers=None) -> CheckResult:
    for i, title, fn in CHECKS:
        if i == cid:
            start = time.perf_counter()
            try:
                passed, detail = fn(workers) if i in _TAKES_WORKERS else fn()
            except Exception as exc:  # a crash is a failure, reported not raised
                passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
            return CheckResult(i, title, bool(passed), detail, time.perf_counter() - start)
    raise KeyError(f"no acceptance check {cid}")


def run_suite(ids=None, workers=None, echo=None) -> list[CheckResult]:
    out = []
    for i, _, _ in CHECKS:
        if ids is None or i in ids:
            r = run_check(i, workers)
            if echo is not None:
                echo(r.line())
            out.append(r)
    return out
