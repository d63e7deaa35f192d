"""Exact counters for coloured patterns, alternating walks and coloured 4-cycles.

All counts are exact Python integers.  The generic backtracking counter is
the oracle every specialised counter is tested against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import patterns
from .coloured_graph import (BLUE, RED, ColouredCompleteGraph, PatternGraph,
                             QuantumPattern, bits)


# ---------------------------------------------------------------------------
# generic counting

def _plan(H: PatternGraph):
    """Static vertex order, most constrained first, with back-constraints."""
    cons = H.constraints()
    order, placed = [], set()
    remaining = set(range(H.h))
    while remaining:
        v = max(remaining, key=lambda u: (sum(1 for w, _ in cons[u] if w in placed), len(cons[u]), -u))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    pos = {v: k for k, v in enumerate(order)}
    back = [[(pos[w], c) for w, c in cons[v] if pos[w] < pos[v]] for v in order]
    return order, back


def count_embeddings(H: PatternGraph, G: ColouredCompleteGraph, fixed: dict | None = None) -> int:
    """Injective maps V(H) -> V(G) preserving the colour of every H-edge.

    fixed optionally pins pattern vertices to host vertices.
    """
    h, n = H.h, G.n
    if h > n:
        return 0
    if h == 0:
        return 1
    order, back = _plan(H)
    pins = [None] * h
    if fixed:
        for i, v in fixed.items():
            pins[order.index(i)] = v
    nb = {RED: G.red, BLUE: G.blue}
    full = (1 << n) - 1
    img = [0] * h

    def rec(k: int, used: int) -> int:
        cand = full & ~used
        for p, c in back[k]:
            cand &= nb[c][img[p]]
        if pins[k] is not None:
            cand &= 1 << pins[k]
        if k == h - 1:
            return cand.bit_count()
        total = 0
        for v in bits(cand):
            img[k] = v
            total += rec(k + 1, used | (1 << v))
        return total

    return rec(0, 0)


def count_copies(H: PatternGraph, G: ColouredCompleteGraph) -> int:
    """Unlabelled copies: embeddings divided by colour-preserving automorphisms."""
    emb = count_embeddings(H, G)
    q, r = divmod(emb, H.aut_count)
    assert r == 0, "embedding count not divisible by automorphism count"
    return q


def count_quantum(Q: QuantumPattern, G: ColouredCompleteGraph):
    """sum c_i * #(H_i, G); exact when every coefficient is an int or Fraction."""
    counts = [count_copies(pat, G) for _, pat in Q.terms]
    if all(isinstance(c, (int, Fraction)) for c, _ in Q.terms):
        total = sum(Fraction(c) * k for (c, _), k in zip(Q.terms, counts))
        return int(total) if total.denominator == 1 else total
    return float(sum(float(c) * k for (c, _), k in zip(Q.terms, counts)))


def count_copies_in_pattern(P: PatternGraph, H: PatternGraph) -> int:
    """Number of copies of P inside the (partially coloured) pattern H."""
    if P.h > H.h:
        return 0
    import itertools
    found = set()
    for img in itertools.permutations(range(H.h), P.h):
        ok = True
        edges = []
        for i, j, c in P.edges:
            a, b = img[i], img[j]
            if H.edge_colour(a, b) != c:
                ok = False
                break
            edges.append((min(a, b), max(a, b)))
        if ok:
            found.add((frozenset(img), frozenset(edges)))
    return len(found)


# ---------------------------------------------------------------------------
# alternating walks

@dataclass
class WalkProfile:
    t: int
    wR: list
    wB: list
    W: list
    rho: list
    beta: list


def walk_profile(G: ColouredCompleteGraph, t: int) -> WalkProfile:
    """Alternating-walk counts w^R_k(x), w^B_k(x) for k = 0..t and their aggregates."""
    if t < 0:
        raise ValueError("t must be non-negative")
    n = G.n
    red_nb = [list(bits(r)) for r in G.red]
    blue_nb = [list(bits(b)) for b in G.blue]
    dR, dB = G.red_degrees, G.blue_degrees
    wR = [[1] * n]
    wB = [[1] * n]
    for _ in range(t):
        pR, pB = wR[-1], wB[-1]
        wR.append([sum(pB[y] for y in red_nb[x]) for x in range(n)])
        wB.append([sum(pR[y] for y in blue_nb[x]) for x in range(n)])
    W = [n] + [sum(wR[k]) + sum(wB[k]) for k in range(1, t + 1)]
    rho = [sum(wR[k][x] ** 2 * dB[x] for x in range(n)) for k in range(t + 1)]
    beta = [sum(wB[k][x] ** 2 * dR[x] for x in range(n)) for k in range(t + 1)]
    return WalkProfile(t, wR, wB, W, rho, beta)


def count_walks_bruteforce(G: ColouredCompleteGraph, t: int) -> int:
    """Alternating t-walks by enumerating all ordered (t+1)-tuples (oracle, tiny n only)."""
    import itertools
    n = G.n
    total = 0
    for walk in itertools.product(range(n), repeat=t + 1):
        prev = None
        ok = True
        for a, b in zip(walk, walk[1:]):
            if a == b:
                ok = False
                break
            c = G.colour(a, b)
            if c == prev:
                ok = False
                break
            prev = c
        total += ok
    return total


def _object_matrix(G: ColouredCompleteGraph, colour: str) -> np.ndarray:
    rows = G.red if colour == RED else G.blue
    m = np.zeros((G.n, G.n), dtype=object)
    m[:] = 0
    for x, r in enumerate(rows):
        for y in bits(r):
            m[x, y] = 1
    return m


def pair_alternating_walks(G: ColouredCompleteGraph, k: int) -> np.ndarray:
    """Matrix of w_k^R(x, y): alternating k-walks from x to y whose first edge is red."""
    if k < 1:
        raise ValueError("k must be at least 1")
    mats = {RED: _object_matrix(G, RED), BLUE: _object_matrix(G, BLUE)}
    out = mats[RED]
    for step in range(1, k):
        out = out.dot(mats[BLUE if step % 2 else RED])
    return out


# ---------------------------------------------------------------------------
# alternating paths and cycles

def count_alternating_cycles(G: ColouredCompleteGraph, length: int) -> int:
    """Unlabelled alternating cycles with `length` edges.

    Each cycle is traversed once: from its smallest vertex, leaving along
    the red edge.
    """
    if length % 2 or length < 4:
        raise ValueError("alternating cycles need even length >= 4")
    n = G.n
    red, blue = G.red, G.blue
    total = 0
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)

        def rec(v: int, depth: int, used: int) -> int:
            # depth edges taken so far; next edge red iff depth is even
            nxt = (red[v] if depth % 2 == 0 else blue[v]) & above & ~used
            if depth == length - 2:
                # last interior vertex must close with a blue edge to s
                return (nxt & blue[s]).bit_count()
            return sum(rec(w, depth + 1, used | (1 << w)) for w in bits(nxt))

        total += rec(s, 0, 1 << s)
    return total


def count_alternating_paths(G: ColouredCompleteGraph, length: int) -> int:
    """Unlabelled alternating paths with `length` edges (either starting colour)."""
    if length < 1:
        raise ValueError("paths need at least one edge")
    n = G.n
    nb = (G.red, G.blue)

    def rec(v: int, colour: int, depth: int, used: int) -> int:
        cand = nb[colour][v] & ~used
        if depth == length - 1:
            return cand.bit_count()
        return sum(rec(w, 1 - colour, depth + 1, used | (1 << w)) for w in bits(cand))

    directed = sum(rec(s, c, 0, 1 << s) for s in range(n) for c in (0, 1))
    return directed // 2


# ---------------------------------------------------------------------------
# pair statistics and coloured 4-cycles

@dataclass
class PairStats:
    """Per-pair quantities as symmetric (or, for w2R, ordered) n x n arrays."""

    codeg: np.ndarray       # red codegree
    blue_codeg: np.ndarray
    w2R: np.ndarray         # w2R[x, y]: midpoints z with xz red and zy blue
    bic: np.ndarray
    mon: np.ndarray
    T: np.ndarray

    def is_full(self, x: int, y: int) -> bool:
        n = self.codeg.shape[0]
        return self.w2R[x, y] + self.w2R[y, x] == n - 2


def pair_stats(G: ColouredCompleteGraph) -> PairStats:
    n = G.n
    red, dR = G.red, G.red_degrees
    codeg = np.zeros((n, n), dtype=np.int64)
    blue_codeg = np.zeros((n, n), dtype=np.int64)
    w2R = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        rx = red[x]
        for y in range(x + 1, n):
            c = (rx & red[y]).bit_count()
            r_xy = (rx >> y) & 1
            codeg[x, y] = codeg[y, x] = c
            # red neighbours of x other than y that are blue to y
            w2R[x, y] = dR[x] - c - r_xy
            w2R[y, x] = dR[y] - c - r_xy
            # inclusion-exclusion over the n - 2 other vertices:
            # (n-2) - (dR[x]-r) - (dR[y]-r) + c, i.e. n - dR[x] - dR[y] + c - 2*b_xy
            blue_codeg[x, y] = blue_codeg[y, x] = n - 2 - dR[x] - dR[y] + c + 2 * r_xy
    bic = codeg * blue_codeg
    mon = w2R * (w2R - 1) // 2 + w2R.T * (w2R.T - 1) // 2
    T = codeg * (w2R + w2R.T)
    np.fill_diagonal(bic, 0)
    np.fill_diagonal(mon, 0)
    np.fill_diagonal(T, 0)
    return PairStats(codeg, blue_codeg, w2R, bic, mon, T)


def _upper_sum(a: np.ndarray) -> int:
    return int(np.triu(a, 1).sum(dtype=np.int64)) if a.dtype != object else int(np.triu(a, 1).sum())


def count_rbrb_antipodal(G: ColouredCompleteGraph, stats: PairStats | None = None) -> int:
    """Alternating 4-cycles: half the sum over pairs of w2R(x,y) * w2R(y,x)."""
    s = stats or pair_stats(G)
    twice = _upper_sum(s.w2R * s.w2R.T)
    assert twice % 2 == 0
    return twice // 2


def count_rrbb_codegree(G: ColouredCompleteGraph, stats: PairStats | None = None) -> int:
    """RRBB cycles: sum over pairs of red codegree times blue codegree."""
    s = stats or pair_stats(G)
    return _upper_sum(s.bic)


def count_rrbb_monochromatic_pairs(G: ColouredCompleteGraph, stats: PairStats | None = None) -> int:
    """RRBB cycles counted from their monochromatic pair: sum of mon(x, y)."""
    s = stats or pair_stats(G)
    return _upper_sum(s.mon)


def count_rrrb_codegree(G: ColouredCompleteGraph, stats: PairStats | None = None) -> int:
    """RRRB cycles: half the sum over pairs of codeg_R * (w2R(x,y) + w2R(y,x))."""
    s = stats or pair_stats(G)
    twice = _upper_sum(s.T)
    assert twice % 2 == 0
    return twice // 2


def count_ccextt_codegree(G: ColouredCompleteGraph) -> int:
    """Red 4-cycles with a blue chord: sum over blue pairs of C(red codegree, 2)."""
    total = 0
    red, blue = G.red, G.blue
    for x in range(G.n):
        for y in bits(blue[x] >> (x + 1) << (x + 1)):
            c = (red[x] & red[y]).bit_count()
            total += c * (c - 1) // 2
    return total


# numpy versions on a red adjacency matrix, used in inner loops (local search)

def _products(R: np.ndarray):
    n = R.shape[0]
    Rf = R.astype(np.float64)
    Bf = 1.0 - Rf - np.eye(n)
    return Rf, Bf


def matrix_rbrb(R: np.ndarray) -> int:
    Rf, Bf = _products(R)
    W = Rf @ Bf
    return int(round((W * W.T).sum() / 4))


def matrix_rrbb(R: np.ndarray) -> int:
    Rf, Bf = _products(R)
    P = (Rf @ Rf) * (Bf @ Bf)
    np.fill_diagonal(P, 0)
    return int(round(P.sum() / 2))


def matrix_rrrb(R: np.ndarray) -> int:
    Rf, Bf = _products(R)
    P = (Rf @ Rf) * (Rf @ Bf)
    np.fill_diagonal(P, 0)
    return int(round(P.sum() / 2))


def matrix_red_triangles(R: np.ndarray) -> int:
    Rf = R.astype(np.float64)
    return int(round(np.trace(Rf @ Rf @ Rf) / 6))


# ---------------------------------------------------------------------------
# dispatch

def _swap_pair(name):
    return lambda: getattr(patterns, name)().swap()


@lru_cache(maxsize=None)
def _special_keys():
    """Pattern keys with a fast identity, mapped to (graph counter, matrix counter, swapped?)."""
    table = {}
    specials = [
        ("rbrb_c4", count_rbrb_antipodal, matrix_rbrb),
        ("rrbb_c4", count_rrbb_codegree, matrix_rrbb),
        ("rrrb_c4", count_rrrb_codegree, matrix_rrrb),
        ("ccextt", count_ccextt_codegree, None),
        ("red_k3", None, matrix_red_triangles),
    ]
    for name, fg, fm in specials:
        pat = patterns.get_pattern(name)
        table[pat.key] = (fg, fm, False)
        table.setdefault(pat.swap().key, (fg, fm, True))
    return table


def special_counter(H: PatternGraph):
    """(graph counter, matrix counter, swapped) for patterns with a fast identity, else None."""
    if H.h > 5:
        return None
    return _special_keys().get(H.key)


def count_pattern(H: PatternGraph, G: ColouredCompleteGraph) -> int:
    """#(H, G) using a codegree identity when one applies, the generic counter otherwise."""
    sp = special_counter(H)
    if sp and sp[0] is not None:
        fg, _, swapped = sp
        return fg(G.swap_colours() if swapped else G)
    return count_copies(H, G)


def matrix_counter(H: PatternGraph):
    """Callable on a 0/1 red matrix giving #(H, G); fast when an identity applies."""
    sp = special_counter(H)
    if sp and sp[1] is not None:
        _, fm, swapped = sp
        if swapped:
            return lambda R: fm(1 - R - np.eye(R.shape[0], dtype=R.dtype))
        return fm
    if sp and sp[0] is not None:
        fg, _, swapped = sp
        return lambda R: fg(_graph_from_matrix(R, swapped))
    return lambda R: count_copies(H, _graph_from_matrix(R, False))


def _graph_from_matrix(R, swapped):
    G = ColouredCompleteGraph.from_matrix(R)
    return G.swap_colours() if swapped else G


# ---------------------------------------------------------------------------
# Goodman identity and induced counts

def goodman_identity_check(G: ColouredCompleteGraph):
    """(C(n,3) - monochromatic triangles, half the number of red-blue 2-paths).

    The two sides are computed independently: triangles by enumeration,
    paths by counting midpoints of red-then-blue walks.
    """
    n = G.n
    if n < 3:
        raise ValueError("need n >= 3")
    mono = 0
    for rows in (G.red, G.blue):
        for x in range(n):
            for y in bits(rows[x] >> (x + 1) << (x + 1)):
                mono += (rows[x] & rows[y] >> (y + 1) << (y + 1)).bit_count()
    lhs = math.comb(n, 3) - mono
    paths = sum((G.red[x] & G.blue[y]).bit_count() for x in range(n) for y in range(n) if x != y)
    return lhs, Fraction(paths, 2)


def induced_count(F, J) -> int:
    """Induced copies of the uncoloured graph F = (h, edges) in J = (n, edges).

    Both are completed to red-blue complete graphs (edges red, non-edges blue).
    J may also be given directly as a ColouredCompleteGraph (its red graph).
    """
    h, f_edges = F
    pat = PatternGraph.complete_from(h, f_edges)
    host = J if isinstance(J, ColouredCompleteGraph) else ColouredCompleteGraph.from_red_edges(*J)
    if h > host.n:
        raise ValueError("F has more vertices than J")
    return count_copies(pat, host)
