"""Canonical labelling of small graphs and isomorph-free generation.

A red-blue K_n is identified with its red graph.  Graphs are lists of int
bitsets.  The canonical certificate is an int whose bit j(j-1)/2 + i
(colex pair order) is set when the canonically relabelled graph has the
edge {i, j}; the canonical form is the labelling that maximises it.

Labelling: colour refinement to an equitable ordered partition, then
individualise-and-refine backtracking.  Subtrees are pruned when they are
provably equivalent to an explored one: via twin transpositions, and via
automorphisms found at equal leaves that fix the current path.
"""
from __future__ import annotations

from .coloured_graph import bits, mask_of


def pair_bit(i: int, j: int) -> int:
    """Colex index of the pair {i, j}, i < j."""
    return j * (j - 1) // 2 + i


def decode(cert: int, n: int) -> list[int]:
    adj = [0] * n
    for j in range(1, n):
        base = j * (j - 1) // 2
        row = (cert >> base) & ((1 << j) - 1)
        adj[j] = row
        for i in bits(row):
            adj[i] |= 1 << j
    return adj


def encode(adj: list[int], order=None) -> int:
    """Certificate of the graph relabelled so that new vertex k is old vertex order[k]."""
    n = len(adj)
    if order is None:
        order = range(n)
    order = list(order)
    c = 0
    for j in range(1, n):
        aj = adj[order[j]]
        base = j * (j - 1) // 2
        for i in range(j):
            if (aj >> order[i]) & 1:
                c |= 1 << (base + i)
    return c


def refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition (label independent)."""
    while True:
        masks = [mask_of(c) for c in cells]
        new = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(cell)
                continue
            changed = True
            for k in keys:
                new.append([v for v in cell if sig[v] == k])
        cells = new
        if not changed:
            return cells


def _orbit_rep(perms, v: int, n: int) -> set[int]:
    """Orbit of v under the group generated by perms."""
    orbit = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for p in perms:
            w = p[u]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def canonical_form(adj: list[int]) -> tuple[int, list[int]]:
    """(certificate, order): order[k] is the vertex receiving canonical label k."""
    n = len(adj)
    if n <= 1:
        return 0, list(range(n))
    best_cert = -1
    best_order: list[int] = []
    autos: list[tuple[int, ...]] = []

    def search(cells, path):
        nonlocal best_cert, best_order
        cells = refine(adj, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = encode(adj, order)
            if cert > best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                perm = [0] * n
                for a, b in zip(best_order, order):
                    perm[a] = b
                autos.append(tuple(perm))
            return
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ti]
        tried: list[int] = []
        for v in target:
            if tried:
                # twins: the transposition (u v) is an automorphism fixing the path
                av = adj[v]
                if any((adj[u] & ~(1 << v)) == (av & ~(1 << u)) for u in tried):
                    continue
                fixing = [p for p in autos if all(p[w] == w for w in path)]
                if fixing and any(v in _orbit_rep(fixing, u, n) for u in tried):
                    continue
            rest = [w for w in target if w != v]
            search(cells[:ti] + [[v], rest] + cells[ti + 1:], path + [v])
            tried.append(v)

    search([list(range(n))], [])
    return best_cert, best_order


def certificate(adj: list[int]) -> int:
    return canonical_form(adj)[0]


# ---------------------------------------------------------------------------
# generation by canonical augmentation

def _invariant(adj: list[int], n: int) -> list[int]:
    deg = [a.bit_count() for a in adj]
    return [deg[v] * n * n + sum(deg[u] for u in bits(adj[v])) for v in range(n)]


def children(parent_cert: int, k: int) -> list[int]:
    """Canonical certificates of the accepted one-vertex extensions of a parent on k vertices.

    A child G' = parent + new vertex is kept iff the new vertex has the
    largest invariant and G' minus its canonical deletion vertex is
    isomorphic to the parent; siblings are de-duplicated by certificate.
    Every isomorphism class on k+1 vertices is produced by exactly one
    parent class, so parents can be processed independently.
    """
    n = k + 1
    padj = decode(parent_cert, k)
    seen: set[int] = set()
    rejected: set[int] = set()
    out = []
    for S in range(1 << k):
        cadj = [a | (((S >> v) & 1) << k) for v, a in enumerate(padj)] + [S]
        inv = _invariant(cadj, n)
        top = max(inv)
        if inv[k] != top:
            continue
        cert, order = canonical_form(cadj)
        if cert in seen or cert in rejected:
            continue
        cands = [v for v in range(n) if inv[v] == top]
        if len(cands) > 1:
            pos = {v: i for i, v in enumerate(order)}
            m = max(cands, key=pos.__getitem__)
            if m != k:
                keep = [v for v in range(n) if v != m]
                sub = [mask_of(keep.index(u) for u in bits(cadj[v]) if u != m) for v in keep]
                if certificate(sub) != parent_cert:
                    rejected.add(cert)
                    continue
        seen.add(cert)
        out.append(cert)
    return out


def _children_batch(args):
    certs, k = args
    out = []
    for c in certs:
        out.extend(children(c, k))
    return out


def generate_level(parents: list[int], k: int, workers: int = 1) -> list[int]:
    """All canonical certificates on k+1 vertices, sorted, from all parents on k vertices."""
    if workers <= 1 or len(parents) < 64:
        out = _children_batch((parents, k))
    else:
        from concurrent.futures import ProcessPoolExecutor
        chunks = [parents[i::workers * 4] for i in range(workers * 4)]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_children_batch, [(c, k) for c in chunks]):
                out.extend(part)
    return sorted(out)
