"""Degree-codegree relaxation, the equalisation iteration, RRBB pair functions,
canonical-pattern scores, the K_{1,1,2} profile optimisation and small
inequality batteries.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coloured_graph import ColouredCompleteGraph, PatternGraph
from .counting import count_ccextt_codegree
from .formulas import CROSSOVER


# ---------------------------------------------------------------------------
# degree-codegree vectors

def pair_list(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@dataclass
class DegreeCodegreeVector:
    """(d, z) with d indexed by vertex and z by pairs i<j in row-major order.

    Entries may be floats or Fractions; derived quantities use the same type.
    """

    d: list
    z: list

    def __post_init__(self):
        n = len(self.d)
        if len(self.z) != n * (n - 1) // 2:
            raise ValueError("z needs one entry per pair")
        self.pairs = pair_list(n)

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def sigma(self):
        return sum(self.d) / self.n

    @property
    def tau(self):
        return sum(x * x for x in self.d) / self.n

    def t_values(self) -> list:
        d = self.d
        return [d[i] + d[j] - 4 * zz for (i, j), zz in zip(self.pairs, self.z)]

    @property
    def ell(self):
        t = self.t_values()
        return sum(t) / len(t)

    def eps_values(self) -> list:
        ell = self.ell
        return [(ell - t) / 4 for t in self.t_values()]

    def Sigma(self):
        """Total deviation sum |t_ij - ell|."""
        t = self.t_values()
        ell = sum(t) / len(t)
        return sum(abs(x - ell) for x in t)

    def p3_gap(self):
        """sum z - (n/2)(tau n - sigma); zero on S(sigma)."""
        n = self.n
        return sum(self.z) - Fraction(n, 2) * (self.tau * n - self.sigma) if self._exact() \
            else sum(self.z) - n / 2 * (self.tau * n - self.sigma)

    def _exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in itertools.chain(self.d, self.z))

    def in_S(self, tol: float = 1e-9) -> bool:
        """(P1) and (P3); the tolerance is scaled by n^2 in float mode."""
        if any(x < 0 or x > 1 for x in self.d):
            return False
        gap = self.p3_gap()
        if self._exact():
            return gap == 0
        return abs(gap) <= tol * self.n ** 2

    def graphical(self) -> list[bool]:
        """(P2) per pair: max(0, d_i + d_j - 1) <= z_ij <= min(d_i, d_j)."""
        d = self.d
        return [max(0, d[i] + d[j] - 1) <= zz <= min(d[i], d[j]) for (i, j), zz in zip(self.pairs, self.z)]

    def to_float(self) -> "DegreeCodegreeVector":
        return DegreeCodegreeVector([float(x) for x in self.d], [float(x) for x in self.z])

    def as_json(self) -> dict:
        conv = (lambda x: str(x)) if self._exact() else float
        return {"d": [conv(x) for x in self.d], "z": [conv(x) for x in self.z]}

    @classmethod
    def from_json(cls, obj) -> "DegreeCodegreeVector":
        conv = lambda x: Fraction(x) if isinstance(x, str) else float(x)
        return cls([conv(x) for x in obj["d"]], [conv(x) for x in obj["z"]])


def vector_from_graph(G: ColouredCompleteGraph, exact: bool = False) -> DegreeCodegreeVector:
    """d_x = d_R(x)/n and z_xy = red codegree / n."""
    n = G.n
    red = G.red
    if exact:
        d = [Fraction(k, n) for k in G.red_degrees]
        z = [Fraction((red[i] & red[j]).bit_count(), n) for i, j in pair_list(n)]
    else:
        d = [k / n for k in G.red_degrees]
        z = [(red[i] & red[j]).bit_count() / n for i, j in pair_list(n)]
    return DegreeCodegreeVector(d, z)


def vector_from_t_offsets(d: list, offsets: list) -> DegreeCodegreeVector:
    """Vector in S(sigma) with t_ij = ell + offsets[k] (offsets summing to zero).

    ell is forced by (P3); z follows from t = d_i + d_j - 4z.
    """
    n = len(d)
    pairs = pair_list(n)
    if len(offsets) != len(pairs):
        raise ValueError("need one offset per pair")
    if sum(offsets) != 0:
        raise ValueError("offsets must sum to zero")
    sigma = sum(d) / n
    tau = sum(x * x for x in d) / n
    target = Fraction(n, 2) * (tau * n - sigma) if all(isinstance(x, (int, Fraction)) for x in d) \
        else n / 2 * (tau * n - sigma)
    sum_pairs = sum(d[i] + d[j] for i, j in pairs)
    ell = (sum_pairs - 4 * target) / len(pairs)
    z = [(d[i] + d[j] - ell - off) / 4 for (i, j), off in zip(pairs, offsets)]
    return DegreeCodegreeVector(list(d), z)


def f_pair(p, q, r):
    return r * (p + q - 2 * r)


def objective_f(v: DegreeCodegreeVector):
    """(1/n^2) sum_{i<j} z_ij (d_i + d_j - 2 z_ij)."""
    d = v.d
    return sum(f_pair(d[i], d[j], zz) for (i, j), zz in zip(v.pairs, v.z)) / v.n ** 2


# ---------------------------------------------------------------------------
# equalisation

@dataclass
class EqualizationTrace:
    gamma: object
    steps: list = field(default_factory=list)   # (Sigma_k, f_k), k = 0, 1, ...
    moves: list = field(default_factory=list)   # (raised pair, lowered pair)
    terminated: bool = False
    final: DegreeCodegreeVector | None = None

    def as_csv(self) -> str:
        lines = ["step,Sigma,f"]
        for k, (s, f) in enumerate(self.steps):
            lines.append(f"{k},{float(s)!r},{float(f)!r}")
        return "\n".join(lines) + "\n"


def equalize(v: DegreeCodegreeVector, gamma, max_steps: int | None = None) -> EqualizationTrace:
    """Shift codegree mass between the most extreme pairs until t is gamma-flat on one side.

    While some t_ij >= ell + gamma and some t_i'j' <= ell - gamma, raise
    z_ij and lower z_i'j' by gamma/5 (the pairs with largest and smallest t,
    lowest index on ties).  Sum z, hence ell and S(sigma) membership, is
    unchanged; Sigma drops by exactly 8 gamma/5 per step.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    z = list(v.z)
    d = v.d
    pairs = v.pairs
    t = [d[i] + d[j] - 4 * zz for (i, j), zz in zip(pairs, z)]
    ell = sum(t) / len(t)
    step = gamma / 5
    cur = DegreeCodegreeVector(d, z)
    trace = EqualizationTrace(gamma, [(cur.Sigma(), objective_f(cur))])
    if max_steps is None:
        # termination bound from the Sigma decrease, plus slack
        max_steps = int(float(trace.steps[0][0]) * 5 / (8 * float(gamma))) + 2
    for _ in range(max_steps):
        hi = max(range(len(t)), key=lambda k: (t[k], -k))
        lo = min(range(len(t)), key=lambda k: (t[k], k))
        if not (t[hi] >= ell + gamma and t[lo] <= ell - gamma):
            trace.terminated = True
            break
        z[hi] += step
        z[lo] -= step
        t[hi] -= 4 * step
        t[lo] += 4 * step
        cur = DegreeCodegreeVector(d, list(z))
        trace.steps.append((cur.Sigma(), objective_f(cur)))
        trace.moves.append((pairs[hi], pairs[lo]))
    else:
        hi = max(t)
        lo = min(t)
        trace.terminated = not (hi >= ell + gamma and lo <= ell - gamma)
    trace.final = DegreeCodegreeVector(d, z)
    return trace


def check_trace(trace: EqualizationTrace, n: int, tol=0) -> list[str]:
    """Violations of the per-step Sigma and f invariants (empty when all hold)."""
    g = trace.gamma
    problems = []
    for k in range(1, len(trace.steps)):
        (s0, f0), (s1, f1) = trace.steps[k - 1], trace.steps[k]
        if abs(s1 - (s0 - 8 * g / 5)) > tol:
            problems.append(f"step {k}: Sigma changed by {s1 - s0}, expected {-8 * g / 5}")
        if f1 - f0 < g * g / (25 * n * n) - tol:
            problems.append(f"step {k}: f increased by {f1 - f0} < gamma^2/(25 n^2)")
    if not trace.terminated:
        problems.append("did not terminate")
    return problems


# ---------------------------------------------------------------------------
# g_sigma and tau*

def g_sigma(sigma, tau):
    """-(1/8)(8 tau^2 - (8 sigma + 1) tau + sigma^2)."""
    return -(8 * tau * tau - (8 * sigma + 1) * tau + sigma * sigma) / 8


def tau_star(sigma):
    """Maximiser of g_sigma over tau >= sigma^2."""
    if sigma < CROSSOVER:
        return sigma / 2 + Fraction(1, 16) if isinstance(sigma, (int, Fraction)) else sigma / 2 + 1 / 16
    return sigma * sigma


def profile_crossover() -> float:
    return CROSSOVER


def moreover_bound_grid(sigmas=(0.61, 0.7, 0.8, 0.9, 1.0), step: float = 1e-3) -> float:
    """Smallest value of sigma^3(1-sigma) - (tau-sigma^2)^2/2 - g_sigma(tau) over the grid."""
    worst = math.inf
    for s in sigmas:
        tau = s * s + np.arange(0, 1 + step / 2, step)
        slack = s ** 3 * (1 - s) - 0.5 * (tau - s * s) ** 2 - g_sigma(s, tau)
        worst = min(worst, float(slack.min()))
    return worst


# ---------------------------------------------------------------------------
# RRBB pair functions

def rrbb_b(p, q, r):
    return r * (1 - p - q + r)


def rrbb_m(p, q, r):
    return (p - r) ** 2 / 2 + (q - r) ** 2 / 2


def is_graphical(p, q, r) -> bool:
    return max(0, p + q - 1) <= r <= min(p, q)


def tradeoff_rhs(p, q, r):
    """1/2 - p(1-p) - b(p,q,r) (1/(2p(1-p)) - 2)."""
    return 0.5 - p * (1 - p) - rrbb_b(p, q, r) * (1 / (2 * p * (1 - p)) - 2)


def tradeoff_gap_closed_form(p, q, r):
    """(-r^2 + r(3p + q - 2p^2 - 1) + p(1-p)((1-p)^2 - q^2)) / (2p(1-p))."""
    return (-r * r + r * (3 * p + q - 2 * p * p - 1) + p * (1 - p) * ((1 - p) ** 2 - q * q)) / (2 * p * (1 - p))


@dataclass
class PairFunctions:
    b: float
    m: float
    t: float
    gap: float | None
    graphical: bool


def rrbb_pair_functions(p, q, r) -> PairFunctions:
    b = rrbb_b(p, q, r)
    m = rrbb_m(p, q, r)
    t = b + m
    graphical = is_graphical(p, q, r)
    gap = None
    if 0 < p < 1:
        gap = tradeoff_rhs(p, q, r) - t
    return PairFunctions(b, m, t, gap, graphical)


def tradeoff_gap_grid(num_pq: int = 100, num_r: int = 101, lo: float = 0.05, hi: float = 0.95):
    """Minimum tradeoff gap over p, q in [lo, hi] and num_r graphical r per (p, q).

    Returns (minimum gap, number of grid points).
    """
    ps = np.linspace(lo, hi, num_pq)
    P, Q = np.meshgrid(ps, ps, indexing="ij")
    rlo = np.maximum(0.0, P + Q - 1)
    rhi = np.minimum(P, Q)
    frac = np.linspace(0.0, 1.0, num_r)
    R = rlo[..., None] + (rhi - rlo)[..., None] * frac
    P3 = np.broadcast_to(P[..., None], R.shape)
    Q3 = np.broadcast_to(Q[..., None], R.shape)
    t = rrbb_b(P3, Q3, R) + rrbb_m(P3, Q3, R)
    gap = tradeoff_rhs(P3, Q3, R) - t
    return float(gap.min()), int(gap.size)


def rrbb_classify_pairs(p, A, eta, threshold=None) -> dict:
    """Split pairs (q, r) at a vertex of degree p into A0, S and T.

    A0: t(p,q,r) < 1/4 - threshold.  Of the rest, S when r <= eta and T
    when r >= 1/2 - eta; anything else is reported as unclassified.
    """
    if threshold is None:
        threshold = eta
    out = {"A0": [], "S": [], "T": [], "unclassified": [], "non_graphical": []}
    for k, (q, r) in enumerate(A):
        if not is_graphical(p, q, r):
            out["non_graphical"].append(k)
        t = rrbb_b(p, q, r) + rrbb_m(p, q, r)
        if t < Fraction(1, 4) - threshold:
            out["A0"].append(k)
        elif r <= eta:
            out["S"].append(k)
        elif r >= Fraction(1, 2) - eta:
            out["T"].append(k)
        else:
            out["unclassified"].append(k)
    return out


def pairs_at_vertex(v: DegreeCodegreeVector, x: int):
    """(p, [(q_y, r_xy) for y != x], [y ...]) read off a degree-codegree vector."""
    n = v.n
    zmap = dict(zip(v.pairs, v.z))
    others = [y for y in range(n) if y != x]
    A = [(v.d[y], zmap[(min(x, y), max(x, y))]) for y in others]
    return v.d[x], A, others


# ---------------------------------------------------------------------------
# canonical patterns

def canonical_score(H: PatternGraph, alpha, beta):
    """sum_i (1-alpha)^{d_b} (1-beta)^{d_r} + alpha^{d_r} beta^{d_b} over the vertices of H."""
    total = 0
    for i in range(H.h):
        dr, db = H.red_degree(i), H.blue_degree(i)
        total = total + (1 - alpha) ** db * (1 - beta) ** dr + alpha ** dr * beta ** db
    return total


def canonical_grid_margin(H: PatternGraph, eta: float = 0.01, grid_step: float = 0.005,
                          delta: float = 1e-3) -> float:
    """min of h - eta/2 - p_H(alpha, beta) over grid points with eta <= alpha + beta <= 1 + delta."""
    g = np.arange(0.0, 1.0 + grid_step / 2, grid_step)
    a, b = np.meshgrid(g, g, indexing="ij")
    s = a + b
    mask = (s >= eta - 1e-12) & (s <= 1 + delta + 1e-12)
    p = canonical_score(H, a[mask], b[mask])
    return float((H.h - eta / 2 - p).min())


def is_canonical_grid(H: PatternGraph, eta: float = 0.01, grid_step: float = 0.005,
                      delta: float = 1e-3) -> bool:
    return canonical_grid_margin(H, eta, grid_step, delta) >= -1e-12


# ---------------------------------------------------------------------------
# small inequality batteries

def small_inequality_checks(seed: int, trials: int) -> dict:
    """Random instances of two auxiliary inequalities.

    product_sum: nonnegative integers a_i, b_i with a_i + b_i <= s and
    M = sum(a_i + b_i) satisfy sum a_i b_i <= M s / 4 (checked exactly).
    mean_deviation: x_i in [-1, 1] with mean x in (0, 1] satisfy
    (1/n) sum (1 - x_i^2)(1 + x x_i) <= 1 - x^4.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    ps_viol, ps_worst = 0, math.inf
    for _ in range(trials):
        s = int(rng.integers(1, 21))
        k = int(rng.integers(1, 11))
        a = rng.integers(0, s + 1, size=k)
        b = np.array([int(rng.integers(0, s - ai + 1)) for ai in a])
        M = int((a + b).sum())
        lhs = int((a * b).sum())
        slack = Fraction(M * s, 4) - lhs
        ps_worst = min(ps_worst, slack)
        ps_viol += slack < 0
    md_viol, md_worst, done = 0, math.inf, 0
    while done < trials:
        n = int(rng.integers(1, 13))
        xs = rng.uniform(-1.0, 1.0, size=n)
        x = xs.mean()
        if x == 0:
            continue
        if x < 0:
            xs, x = -xs, -x
        lhs = float(((1 - xs ** 2) * (1 + x * xs)).mean())
        slack = 1 - x ** 4 - lhs
        md_worst = min(md_worst, slack)
        md_viol += slack < -1e-12
        done += 1
    return {
        "product_sum": {"trials": trials, "violations": int(ps_viol), "worst_slack": float(ps_worst)},
        "mean_deviation": {"trials": trials, "violations": int(md_viol), "worst_slack": float(md_worst)},
    }


# ---------------------------------------------------------------------------
# K_{1,1,2}: lambda_Q and Q-strictness margins

def lambda_Q(x) -> float:
    x = np.asarray(x, dtype=float)
    if (x < -1e-15).any() or x.sum() > 1 + 1e-12:
        raise ValueError("x must be a non-negative vector with sum at most 1")
    return float((x ** 2 * (1 - x) ** 2).sum())


def _compositions(total: int, parts: int, cap: int):
    """Non-increasing positive integer tuples of length `parts` with sum <= total."""
    if parts == 0:
        yield ()
        return
    for first in range(min(cap, total), 0, -1):
        for rest in _compositions(total - first, parts - 1, first):
            yield (first,) + rest


def optimize_lambda_Q(max_parts: int = 6, grid: int = 30, polish: int = 5):
    """Maximise lambda_Q over the simplex: grid scan over <= max_parts parts, then SLSQP polish.

    Returns (argmax sorted non-increasing, with zero parts dropped, value).
    """
    from scipy.optimize import minimize
    scored = []
    for t in range(1, max_parts + 1):
        for comp in _compositions(grid, t, grid):
            x = np.array(comp, dtype=float) / grid
            scored.append((lambda_Q(x), comp))
    scored.sort(key=lambda s: (-s[0], s[1]))
    best_x, best_val = None, -math.inf
    for _, comp in scored[:polish]:
        x0 = np.array(comp, dtype=float) / grid
        res = minimize(lambda x: -(x ** 2 * (1 - x) ** 2).sum(), x0,
                       jac=lambda x: -(2 * x * (1 - x) ** 2 - 2 * x ** 2 * (1 - x)),
                       method="SLSQP", bounds=[(0.0, 1.0)] * len(x0),
                       constraints=[{"type": "ineq", "fun": lambda x: 1 - x.sum(), "jac": lambda x: -np.ones_like(x)}],
                       options={"ftol": 1e-16, "maxiter": 500})
        x = np.clip(res.x, 0, 1)
        val = lambda_Q(x) if x.sum() <= 1 + 1e-12 else -math.inf
        if val > best_val:
            best_x, best_val = x, val
    arg = tuple(sorted((float(v) for v in best_x if v > 1e-9), reverse=True))
    return arg, best_val


def complete_multipartite_red(sizes) -> ColouredCompleteGraph:
    """Red graph = complete multipartite with the given part sizes (parts are consecutive blocks)."""
    n = sum(sizes)
    full = (1 << n) - 1
    rows = [0] * n
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        for v in range(start, start + s):
            rows[v] = full & ~part
        start += s
    return ColouredCompleteGraph(n, rows)


def q_count_multipartite(sizes) -> int:
    """I(2 C4 + K4^-, K_{n_1,...}) = sum C(n_i,2) C(n - n_i,2)."""
    n = sum(sizes)
    return sum(math.comb(m, 2) * math.comb(n - m, 2) for m in sizes)


def q_strict_margins(m1: int, m2: int, m3: int) -> dict:
    """Exact single-flip losses and new-vertex attachment gaps at K_{m1,m2,m3}.

    The quantum count I(2 C4 + K4^-, J) equals the number of red 4-cycles
    with a blue chord in the colouring whose red graph is J, which is how
    it is evaluated on the perturbed graphs.
    """
    sizes = (m1, m2, m3)
    if min(sizes) < 1:
        raise ValueError("parts must be non-empty")
    G = complete_multipartite_red(sizes)
    base = count_ccextt_codegree(G)
    assert base == q_count_multipartite(sizes)
    starts = [0, m1, m1 + m2]
    inter, intra = {}, {}
    for i, j in itertools.combinations(range(3), 2):
        inter[(i, j)] = base - count_ccextt_codegree(G.flip_edge(starts[i], starts[j]))
    for i in range(3):
        if sizes[i] >= 2:
            intra[i] = base - count_ccextt_codegree(G.flip_edge(starts[i], starts[i] + 1))
    n = G.n
    gains = {}
    for A in itertools.chain.from_iterable(itertools.combinations(range(3), k) for k in range(4)):
        mask = 0
        for i in A:
            mask |= ((1 << sizes[i]) - 1) << starts[i]
        rows = [r | (((mask >> v) & 1) << n) for v, r in enumerate(G.red)] + [mask]
        gains[A] = count_ccextt_codegree(ColouredCompleteGraph(n + 1, rows)) - base
    best_two = min(v for A, v in gains.items() if len(A) == 2)
    s2_gaps = {A: best_two - v for A, v in gains.items() if len(A) != 2}
    m = n
    return {
        "base": base,
        "inter_losses": {f"{i}-{j}": v for (i, j), v in inter.items()},
        "intra_losses": {str(i): v for i, v in intra.items()},
        "inter_ratio": min(inter.values()) / (7 * m * m / 18),
        "intra_ratio": (min(intra.values()) / (2 * m * m / 9)) if intra else None,
        "attachment_gains": {",".join(map(str, A)) or "-": v for A, v in gains.items()},
        "s2_gaps": {",".join(map(str, A)) or "-": v for A, v in s2_gaps.items()},
        "s2_all_positive": all(v > 0 for v in s2_gaps.values()),
    }
