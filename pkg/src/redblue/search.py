"""Exact max(H, n) by exhaustive isomorph-free search, local search, and certification."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import canon
from .coloured_graph import (BLUE, RED, ColouredCompleteGraph, PatternGraph,
                             assess_bipartition, assess_quasirandomness, bits)
from .counting import (count_copies, count_copies_in_pattern, count_embeddings,
                       count_pattern, matrix_counter)
from .formulas import extension_bound

MAX_EXHAUSTIVE_N = 9


class CapExceeded(ValueError):
    """Raised when an exhaustive search is requested beyond the supported size."""


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("REDBLUE_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# exhaustive generation

_LEVELS: dict[int, tuple[int, ...]] = {1: (0,)}


def _level(n: int, workers: int = 1) -> tuple[int, ...]:
    if n not in _LEVELS:
        parents = list(_level(n - 1, workers))
        _LEVELS[n] = tuple(canon.generate_level(parents, n - 1, workers))
    return _LEVELS[n]


def level_certificates(n: int, workers: int | None = None) -> tuple[int, ...]:
    """Canonical certificates of all red graphs on n vertices, sorted."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_EXHAUSTIVE_N:
        raise CapExceeded(f"exhaustive generation is capped at n = {MAX_EXHAUSTIVE_N}; "
                          "use local_search_max for larger n")
    return _level(n, 1 if workers is None else workers)


def graph_from_certificate(cert: int, n: int) -> ColouredCompleteGraph:
    return ColouredCompleteGraph(n, canon.decode(cert, n))


def enumerate_nonisomorphic(n: int, workers: int | None = None):
    """Yield one red-blue K_n per isomorphism class, in certificate order."""
    for c in level_certificates(n, workers if workers is not None else default_workers()):
        yield graph_from_certificate(c, n)


def graph_certificate(G: ColouredCompleteGraph) -> int:
    return canon.certificate(list(G.red))


def are_isomorphic(G1: ColouredCompleteGraph, G2: ColouredCompleteGraph) -> bool:
    return G1.n == G2.n and graph_certificate(G1) == graph_certificate(G2)


# ---------------------------------------------------------------------------
# vectorised exact counting over a whole level

@lru_cache(maxsize=None)
def _subset_table(H: PatternGraph) -> np.ndarray:
    """T[code] = #(H, K) for every red-blue K_h, indexed by its colex certificate."""
    h = H.h
    size = 1 << (h * (h - 1) // 2)
    return np.array([count_copies(H, ColouredCompleteGraph(h, canon.decode(c, h))) for c in range(size)],
                    dtype=np.int64)


def _bit_matrix(certs, n: int) -> np.ndarray:
    m = n * (n - 1) // 2
    arr = np.array(certs, dtype=np.uint64)
    return ((arr[:, None] >> np.arange(m, dtype=np.uint64)[None, :]) & np.uint64(1)).astype(np.int64)


def counts_over_level(H: PatternGraph, n: int, certs=None) -> np.ndarray:
    """#(H, G) for every graph of the level, via #(H,G) = sum over h-sets S of #(H, G[S])."""
    if certs is None:
        certs = level_certificates(n)
    h = H.h
    if h > n:
        return np.zeros(len(certs), dtype=np.int64)
    if h > 6:
        return np.array([count_copies(H, graph_from_certificate(c, n)) for c in certs], dtype=np.int64)
    table = _subset_table(H)
    B = _bit_matrix(certs, n)
    total = np.zeros(len(certs), dtype=np.int64)
    for S in itertools.combinations(range(n), h):
        code = np.zeros(len(certs), dtype=np.int64)
        for j in range(1, h):
            for i in range(j):
                code |= B[:, canon.pair_bit(S[i], S[j])] << canon.pair_bit(i, j)
        total += table[code]
    return total


# ---------------------------------------------------------------------------
# results

@dataclass
class SearchResult:
    pattern: PatternGraph
    n: int
    max_value: int
    extremal: list
    graphs_examined: int
    classifications: list = field(default_factory=list)
    swap_pairs: list = field(default_factory=list)
    method: str = "exhaustive"
    stats: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "pattern": {"name": self.pattern.name, "h": self.pattern.h, "edges": self.pattern.to_literal()},
            "n": self.n,
            "max_value": self.max_value,
            "extremal": [G.colour_string for G in self.extremal],
            "classifications": self.classifications,
            "swap_pairs": [list(p) for p in self.swap_pairs],
            "method": self.method,
            "stats": {"graphs_examined": self.graphs_examined, **self.stats},
        }


def brute_force_max(H: PatternGraph, n: int, workers: int | None = None) -> SearchResult:
    """Exact max(H, n) and every extremal colouring up to isomorphism."""
    if n > MAX_EXHAUSTIVE_N:
        raise CapExceeded(f"exhaustive search is capped at n = {MAX_EXHAUSTIVE_N}")
    certs = level_certificates(n, workers if workers is not None else default_workers())
    values = counts_over_level(H, n, certs)
    best = int(values.max())
    idx = np.flatnonzero(values == best)
    ext_certs = [certs[i] for i in idx]
    extremal = []
    for c in ext_certs:
        G = graph_from_certificate(c, n)
        assert count_pattern(H, G) == best, "extremal graph failed its re-count"
        extremal.append(G)
    position = {c: k for k, c in enumerate(ext_certs)}
    swap_pairs = []
    for k, G in enumerate(extremal):
        j = position.get(graph_certificate(G.swap_colours()))
        if j is not None and k <= j:
            swap_pairs.append((k, j))
    return SearchResult(H, n, best, extremal, len(certs),
                        [classify_extremal(G) for G in extremal], swap_pairs)


def local_search_max(H: PatternGraph, n: int, seed: int, restarts: int = 10,
                     start_density: float = 0.5) -> SearchResult:
    """Best colouring found by strict-improvement single-pair flips from seeded random starts.

    Each restart draws a random colouring, then sweeps the pairs in a random
    order, keeping a flip only when it strictly increases #(H, G), until a
    full sweep makes no change.  Deterministic given (seed, restarts).
    """
    if n < H.h:
        raise ValueError("n must be at least the pattern size")
    rng = np.random.Generator(np.random.PCG64(seed))
    f = matrix_counter(H)
    iu, ju = np.triu_indices(n, 1)
    best_val, best_R, hits, evaluations = -1, None, 0, 0
    per_restart = []
    for _ in range(restarts):
        upper = (rng.random(len(iu)) < start_density).astype(np.int64)
        R = np.zeros((n, n), dtype=np.int64)
        R[iu, ju] = upper
        R[ju, iu] = upper
        cur = f(R)
        evaluations += 1
        improved = True
        while improved:
            improved = False
            for k in rng.permutation(len(iu)):
                x, y = iu[k], ju[k]
                R[x, y] ^= 1
                R[y, x] ^= 1
                val = f(R)
                evaluations += 1
                if val > cur:
                    cur, improved = val, True
                else:
                    R[x, y] ^= 1
                    R[y, x] ^= 1
        per_restart.append(int(cur))
        if cur > best_val:
            best_val, best_R, hits = cur, R.copy(), 1
        elif cur == best_val:
            hits += 1
    G = ColouredCompleteGraph.from_matrix(best_R)
    assert count_pattern(H, G) == best_val
    return SearchResult(H, n, int(best_val), [G], evaluations, [classify_extremal(G)], [],
                        method="local_search",
                        stats={"seed": seed, "restarts": restarts, "hits": hits, "per_restart": per_restart})


# ---------------------------------------------------------------------------
# structure of extremal graphs

def _components(rows: tuple[int, ...], n: int) -> list[int]:
    left = (1 << n) - 1
    comps = []
    while left:
        v = (left & -left).bit_length() - 1
        seen, frontier = 1 << v, 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= rows[u]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(seen)
        left &= ~seen
    return comps


def _clique_cover(rows, n):
    """Part masks if the graph is a disjoint union of cliques, else None."""
    comps = _components(rows, n)
    for c in comps:
        size = c.bit_count()
        if any((rows[v] & c).bit_count() != size - 1 for v in bits(c)):
            return None
    return comps


def classify_extremal(G: ColouredCompleteGraph, qr_threshold: float = 0.05) -> dict:
    """Label G as monochromatic, partitioned, Turan, quasirandom or other."""
    n = G.n
    e, pairs = G.red_edge_count, n * (n - 1) // 2
    if e in (0, pairs):
        return {"kind": "monochromatic", "colour": RED if e == pairs else BLUE}
    for colour, other_rows in ((RED, G.blue), (BLUE, G.red)):
        parts = _clique_cover(other_rows, n)
        if parts is None:
            continue
        sizes = sorted(p.bit_count() for p in parts)
        if len(parts) == 2:
            X = min(parts, key=lambda p: (p.bit_count(), p))
            a = assess_bipartition(G, X)
            assert not a.minority_edges
            return {"kind": "partitioned", "a": sizes[0], "b": sizes[1], "colour": colour}
        if sizes[-1] - sizes[0] <= 1:
            return {"kind": "turan", "t": len(parts), "colour": colour}
        return {"kind": "multipartite", "sizes": sizes, "colour": colour}
    q = assess_quasirandomness(G)
    kind = "quasirandom" if q.score <= qr_threshold else "other"
    return {"kind": kind, "sigma": round(q.sigma, 12), "score": round(q.score, 12)}


@dataclass
class VertexCopyProfile:
    counts: list
    mean: Fraction
    max_deviation_ratio: float


def vertex_copy_profile(H: PatternGraph, G: ColouredCompleteGraph) -> VertexCopyProfile:
    """Copies of H through each vertex of G."""
    aut = H.aut_count
    counts = []
    for v in range(G.n):
        emb = sum(count_embeddings(H, G, fixed={i: v}) for i in range(H.h))
        counts.append(emb // aut)
    mean = Fraction(sum(counts), G.n) if G.n else Fraction(0)
    dev = 0.0 if mean == 0 else float(max(abs(c - mean) for c in counts) / mean)
    return VertexCopyProfile(counts, mean, dev)


def extension_count(H: PatternGraph, Hminus: PatternGraph) -> int:
    """Most copies of H containing a fixed labelled copy of H^- in any completion of H^-."""
    h = Hminus.h
    free = [(i, j) for i, j in itertools.combinations(range(h), 2) if Hminus.edge_colour(i, j) is None]
    base = {(i, j): c for i, j, c in Hminus.edges}
    best = 0
    for choice in itertools.product((RED, BLUE), repeat=len(free)):
        col = dict(base)
        col.update(zip(free, choice))
        copies = set()
        for perm in itertools.permutations(range(h)):
            edges = {}
            ok = True
            for i, j, c in H.edges:
                a, b = sorted((perm[i], perm[j]))
                if col[(a, b)] != c:
                    ok = False
                    break
                edges[(a, b)] = c
            if ok and all(edges.get((i, j)) == c for (i, j), c in base.items()):
                copies.add(frozenset(edges))
        best = max(best, len(copies))
    return best


def extension_check(H: PatternGraph, Hminus: PatternGraph, n: int) -> dict:
    """Check max(H,n) <= t * max(H^-,n) / #(H^-,H) by exhaustive search."""
    if Hminus.h != H.h:
        raise ValueError("H^- must be a spanning subgraph of H (same vertex count)")
    s = count_copies_in_pattern(Hminus, H)
    if s == 0:
        raise ValueError("H^- is not a subgraph of H")
    t = extension_count(H, Hminus)
    max_minus = brute_force_max(Hminus, n).max_value
    max_h = brute_force_max(H, n).max_value
    bound = extension_bound(max_minus, t, s)
    return {"t": t, "s": s, "max_hminus": max_minus, "max_h": max_h,
            "bound": bound, "holds": max_h <= bound, "tight": max_h == bound}


def monotonicity_ratio_ok(max_n: int, max_prev: int, n: int, h: int) -> bool:
    """(n - h) max(H, n) <= n max(H, n-1), i.e. max/(n)_h is non-increasing."""
    return (n - h) * max_n <= n * max_prev
