"""Red-blue complete graphs, coloured patterns and structural measures.

A red-blue K_n is stored as one int bitset per vertex holding its red
neighbourhood; the blue neighbourhood is the complement inside V - {x}.
Vertices are 0-based throughout the library.  The text format and the
edge-list literal used by the command line are the only places where
vertex labels are 1-based.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

RED = "R"
BLUE = "B"
COLOURS = (RED, BLUE)


def other(colour: str) -> str:
    if colour == RED:
        return BLUE
    if colour == BLUE:
        return RED
    raise ValueError(f"unknown colour {colour!r}")


def _check_colour(colour: str) -> str:
    c = str(colour).upper()[:1]
    if c not in COLOURS:
        raise ValueError(f"unknown colour {colour!r}; use 'R' or 'B'")
    return c


def bits(mask: int):
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class ColouredCompleteGraph:
    """An immutable red-blue K_n.

    red[x] is the bitset of red neighbours of x.  Blue rows, degrees and
    the colour string are derived once and cached.
    """

    def __init__(self, n: int, red_rows: Sequence[int]):
        if n < 0:
            raise ValueError("n must be non-negative")
        if len(red_rows) != n:
            raise ValueError("need one red row per vertex")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in red_rows)
        for x, r in enumerate(rows):
            if r & ~full or (r >> x) & 1:
                raise ValueError(f"row {x} has a loop or out-of-range bit")
            for y in bits(r):
                if not (rows[y] >> x) & 1:
                    raise ValueError(f"colour not symmetric on pair {x},{y}")
        self.n = n
        self.red = rows
        self._full = full

    # construction helpers -------------------------------------------------
    @classmethod
    def from_red_edges(cls, n: int, edges: Iterable[tuple[int, int]]):
        rows = [0] * n
        for x, y in edges:
            if x == y:
                raise ValueError("loops are not allowed")
            rows[x] |= 1 << y
            rows[y] |= 1 << x
        return cls(n, rows)

    @classmethod
    def from_matrix(cls, matrix) -> "ColouredCompleteGraph":
        """Build from a 0/1 red adjacency matrix (diagonal ignored)."""
        a = np.asarray(matrix)
        n = a.shape[0]
        rows = []
        for x in range(n):
            r = 0
            for y in np.flatnonzero(a[x]):
                if y != x:
                    r |= 1 << int(y)
            rows.append(r)
        return cls(n, rows)

    @classmethod
    def from_colour_string(cls, n: int, s: str) -> "ColouredCompleteGraph":
        s = s.strip()
        if len(s) != n * (n - 1) // 2:
            raise ValueError(f"colour string has length {len(s)}, expected {n * (n - 1) // 2}")
        rows = [0] * n
        k = 0
        for x in range(n):
            for y in range(x + 1, n):
                c = s[k]
                k += 1
                if c == RED:
                    rows[x] |= 1 << y
                    rows[y] |= 1 << x
                elif c != BLUE:
                    raise ValueError(f"bad colour character {c!r}")
        return cls(n, rows)

    @classmethod
    def from_text(cls, text: str) -> "ColouredCompleteGraph":
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise ValueError("graph text must start with the vertex count")
        try:
            n = int(lines[0].strip())
        except ValueError:
            raise ValueError(f"bad vertex count line {lines[0]!r}") from None
        body = lines[1].strip() if len(lines) > 1 else ""
        return cls.from_colour_string(n, body)

    def to_text(self) -> str:
        return f"{self.n}\n{self.colour_string}\n"

    @cached_property
    def colour_string(self) -> str:
        """Upper-triangular colours in row-major order, one R/B per pair."""
        out = []
        for x in range(self.n):
            r = self.red[x]
            for y in range(x + 1, self.n):
                out.append(RED if (r >> y) & 1 else BLUE)
        return "".join(out)

    # basic queries ---------------------------------------------------------
    @cached_property
    def blue(self) -> tuple[int, ...]:
        return tuple(self._full ^ r ^ (1 << x) for x, r in enumerate(self.red))

    def red_nbhd(self, x: int) -> int:
        return self.red[x]

    def blue_nbhd(self, x: int) -> int:
        return self.blue[x]

    def nbhd(self, x: int, colour: str) -> int:
        return self.red[x] if colour == RED else self.blue[x]

    @cached_property
    def red_degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.red)

    @cached_property
    def blue_degrees(self) -> tuple[int, ...]:
        return tuple(self.n - 1 - d for d in self.red_degrees)

    def red_deg(self, x: int) -> int:
        return self.red_degrees[x]

    def blue_deg(self, x: int) -> int:
        return self.blue_degrees[x]

    def is_red(self, x: int, y: int) -> bool:
        if x == y:
            raise ValueError("a vertex pair needs two distinct vertices")
        return bool((self.red[x] >> y) & 1)

    def colour(self, x: int, y: int) -> str:
        return RED if self.is_red(x, y) else BLUE

    def red_codegree(self, x: int, y: int) -> int:
        return (self.red[x] & self.red[y]).bit_count()

    def blue_codegree(self, x: int, y: int) -> int:
        return (self.blue[x] & self.blue[y]).bit_count()

    @cached_property
    def red_edge_count(self) -> int:
        return sum(self.red_degrees) // 2

    def red_edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in bits(self.red[x] >> (x + 1) << (x + 1))]

    def red_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for x in range(self.n):
            for y in bits(self.red[x]):
                a[x, y] = 1
        return a

    # transformations -------------------------------------------------------
    def swap_colours(self) -> "ColouredCompleteGraph":
        return ColouredCompleteGraph(self.n, self.blue)

    def flip_edge(self, x: int, y: int) -> "ColouredCompleteGraph":
        if x == y:
            raise ValueError("flip_edge needs two distinct vertices")
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise ValueError("vertex out of range")
        rows = list(self.red)
        rows[x] ^= 1 << y
        rows[y] ^= 1 << x
        return ColouredCompleteGraph(self.n, rows)

    def relabel(self, order: Sequence[int]) -> "ColouredCompleteGraph":
        """Graph whose vertex k is vertex order[k] of self."""
        pos = {v: k for k, v in enumerate(order)}
        rows = []
        for v in order:
            rows.append(mask_of(pos[u] for u in bits(self.red[v])))
        return ColouredCompleteGraph(self.n, rows)

    def induced(self, vertices: Sequence[int]) -> "ColouredCompleteGraph":
        pos = {v: k for k, v in enumerate(vertices)}
        rows = [mask_of(pos[u] for u in bits(self.red[v]) if u in pos) for v in vertices]
        return ColouredCompleteGraph(len(vertices), rows)

    def __eq__(self, other_graph) -> bool:
        return (isinstance(other_graph, ColouredCompleteGraph)
                and self.n == other_graph.n and self.red == other_graph.red)

    def __hash__(self) -> int:
        return hash((self.n, self.red))

    def __repr__(self) -> str:
        return f"ColouredCompleteGraph(n={self.n}, red_edges={self.red_edge_count})"


# ---------------------------------------------------------------------------
# patterns

_EDGE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*:\s*([RrBb])\s*$")


class PatternGraph:
    """A small red-blue graph H; pairs that are not edges are unconstrained."""

    def __init__(self, h: int, edges: Iterable[tuple[int, int, str]], name: str | None = None):
        seen = {}
        for i, j, c in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError("pattern edges need distinct endpoints")
            if i > j:
                i, j = j, i
            if not (0 <= i and j < h):
                raise ValueError(f"pattern edge ({i},{j}) outside 0..{h - 1}")
            if (i, j) in seen:
                raise ValueError(f"duplicate pattern pair ({i},{j})")
            seen[(i, j)] = _check_colour(c)
        self.h = h
        self.edges = tuple(sorted((i, j, c) for (i, j), c in seen.items()))
        self.name = name
        self._colour = dict(seen)

    @classmethod
    def parse(cls, literal: str, name: str | None = None) -> "PatternGraph":
        """Parse '1-2:R,2-3:B' (1-based vertex labels)."""
        edges = []
        h = 0
        for part in literal.split(","):
            if not part.strip():
                continue
            m = _EDGE_RE.match(part)
            if not m:
                raise ValueError(f"bad edge literal {part!r}; expected like '1-2:R'")
            i, j = int(m.group(1)), int(m.group(2))
            if i < 1 or j < 1:
                raise ValueError("edge literal labels start at 1")
            edges.append((i - 1, j - 1, m.group(3)))
            h = max(h, i, j)
        if not edges:
            raise ValueError("empty edge literal")
        return cls(h, edges, name=name)

    def to_literal(self) -> str:
        return ",".join(f"{i + 1}-{j + 1}:{c}" for i, j, c in self.edges)

    @classmethod
    def complete_from(cls, h: int, red_edges: Iterable[tuple[int, int]], name=None) -> "PatternGraph":
        """Red-blue K_h pattern: the given edges red, every other pair blue."""
        red = {(min(i, j), max(i, j)) for i, j in red_edges}
        edges = [(i, j, RED if (i, j) in red else BLUE) for i, j in itertools.combinations(range(h), 2)]
        return cls(h, edges, name=name)

    @classmethod
    def from_graph(cls, G: ColouredCompleteGraph, name=None) -> "PatternGraph":
        return cls(G.n, [(i, j, G.colour(i, j)) for i, j in itertools.combinations(range(G.n), 2)], name=name)

    def edge_colour(self, i: int, j: int) -> str | None:
        return self._colour.get((min(i, j), max(i, j)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, i: int, colour: str) -> int:
        return sum(1 for a, b, c in self.edges if c == colour and i in (a, b))

    def red_degree(self, i: int) -> int:
        return self.degree(i, RED)

    def blue_degree(self, i: int) -> int:
        return self.degree(i, BLUE)

    def is_complete(self) -> bool:
        return len(self.edges) == self.h * (self.h - 1) // 2

    def is_connected(self) -> bool:
        if self.h == 0:
            return True
        adj = [0] * self.h
        for i, j, _ in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.h) - 1

    def swap(self) -> "PatternGraph":
        name = None if self.name is None else f"swap({self.name})"
        return PatternGraph(self.h, [(i, j, other(c)) for i, j, c in self.edges], name=name)

    def relabel(self, perm: Sequence[int]) -> "PatternGraph":
        """Pattern with vertex i renamed perm[i]."""
        return PatternGraph(self.h, [(perm[i], perm[j], c) for i, j, c in self.edges], name=self.name)

    def constraints(self):
        """Per-vertex lists (neighbour, colour) used by the backtracking counters."""
        out = [[] for _ in range(self.h)]
        for i, j, c in self.edges:
            out[i].append((j, c))
            out[j].append((i, c))
        return out

    @cached_property
    def aut_count(self) -> int:
        """Order of the colour-preserving automorphism group (brute force over h!)."""
        return sum(1 for _ in self.automorphisms())

    def automorphisms(self):
        target = set(self.edges)
        for perm in itertools.permutations(range(self.h)):
            ok = True
            for i, j, c in self.edges:
                a, b = perm[i], perm[j]
                if a > b:
                    a, b = b, a
                if (a, b, c) not in target:
                    ok = False
                    break
            if ok:
                yield perm

    @cached_property
    def key(self) -> tuple:
        """Isomorphism-invariant key: lexicographically least relabelled edge tuple."""
        best = None
        for perm in itertools.permutations(range(self.h)):
            e = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), c) for i, j, c in self.edges))
            if best is None or e < best:
                best = e
        return (self.h, best)

    def is_isomorphic(self, other_pattern: "PatternGraph") -> bool:
        return (self.h == other_pattern.h and self.edge_count == other_pattern.edge_count
                and self.key == other_pattern.key)

    def __eq__(self, other_pattern) -> bool:
        return isinstance(other_pattern, PatternGraph) and (self.h, self.edges) == (other_pattern.h, other_pattern.edges)

    def __hash__(self) -> int:
        return hash((self.h, self.edges))

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"PatternGraph({label}h={self.h}, edges={self.to_literal()})"


@dataclass
class QuantumPattern:
    """Formal real-weighted sum of patterns."""

    terms: list = field(default_factory=list)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a quantum pattern needs at least one term")
        for coef, pat in self.terms:
            if isinstance(coef, float) and not math.isfinite(coef):
                raise ValueError("coefficients must be finite")
            if not isinstance(pat, PatternGraph):
                raise TypeError("terms are (coefficient, PatternGraph) pairs")

    def scaled(self, c) -> "QuantumPattern":
        return QuantumPattern([(c * coef, pat) for coef, pat in self.terms])


# ---------------------------------------------------------------------------
# constructions

def construct_partitioned(n: int, a: int, bip_colour: str = RED) -> ColouredCompleteGraph:
    """Pairs between the first a and the last n - a vertices get bip_colour."""
    if not 0 <= a <= n:
        raise ValueError(f"part size a={a} must lie in 0..{n}")
    bip_colour = _check_colour(bip_colour)
    x_mask = (1 << a) - 1
    y_mask = ((1 << n) - 1) ^ x_mask
    rows = []
    for v in range(n):
        cross = y_mask if v < a else x_mask
        same = (x_mask if v < a else y_mask) & ~(1 << v)
        rows.append(cross if bip_colour == RED else same)
    return ColouredCompleteGraph(n, rows)


def turan_part_sizes(n: int, parts: int) -> list[int]:
    q, r = divmod(n, parts)
    return [q + 1] * r + [q] * (parts - r)


def construct_turan_red(n: int, parts: int) -> ColouredCompleteGraph:
    """Red graph = balanced complete parts-partite graph; intra-part pairs blue."""
    if parts < 1 or parts > max(n, 1):
        raise ValueError(f"parts must lie in 1..{n}")
    full = (1 << n) - 1
    rows = [0] * n
    start = 0
    for size in turan_part_sizes(n, parts):
        part = ((1 << size) - 1) << start
        for v in range(start, start + size):
            rows[v] = full & ~part
        start += size
    return ColouredCompleteGraph(n, rows)


def construct_quasirandom(n: int, sigma: float, seed: int) -> ColouredCompleteGraph:
    """Binomial random colouring: each pair red with probability sigma.

    Randomness comes from numpy's PCG64 generator seeded with `seed`; one
    uniform draw per pair in row-major upper-triangular order, red iff the
    draw is < sigma.  The stream is fixed by numpy's PCG64 specification, so
    output is identical across platforms.
    """
    if not 0 <= float(sigma) <= 1:
        raise ValueError("sigma must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(n * (n - 1) // 2) < float(sigma)
    rows = [0] * n
    k = 0
    for x in range(n):
        for y in range(x + 1, n):
            if draws[k]:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
            k += 1
    return ColouredCompleteGraph(n, rows)


def monochromatic(n: int, colour: str = RED) -> ColouredCompleteGraph:
    full = (1 << n) - 1
    if _check_colour(colour) == RED:
        return ColouredCompleteGraph(n, [full & ~(1 << x) for x in range(n)])
    return ColouredCompleteGraph(n, [0] * n)


def red_cycle(n: int) -> ColouredCompleteGraph:
    return ColouredCompleteGraph.from_red_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# assessments

@dataclass
class BipartitionAssessment:
    """How far G is from the partitioned graph with parts X, Y.

    bip_colour is the colour compared against K_{X,Y}; minority_edges are
    the pairs that disagree with that pattern.
    """

    X: int
    Y: int
    bip_colour: str
    minority_edges: list
    red_distance: int
    blue_distance: int
    size_delta: Fraction
    edit_delta: Fraction
    delta: Fraction

    @property
    def minority_colour(self) -> str:
        return self.bip_colour


def _as_mask(X, n: int) -> int:
    if isinstance(X, int):
        mask = X
    else:
        mask = mask_of(X)
    if mask & ~((1 << n) - 1) or mask < 0:
        raise ValueError("X must be a subset of the vertex set")
    return mask


def assess_bipartition(G: ColouredCompleteGraph, X) -> BipartitionAssessment:
    """Distance of G to K_{X,Y} in either colour, and the least delta with (B1) and (B2).

    Ties between the colours go to red.
    """
    n = G.n
    xm = _as_mask(X, n)
    ym = ((1 << n) - 1) ^ xm
    # red pairs inside parts plus blue pairs across = |E(R) xor E(K_XY)|
    red_inside = sum((G.red[v] & (xm if (xm >> v) & 1 else ym)).bit_count() for v in range(n)) // 2
    red_across = sum((G.red[v] & ym).bit_count() for v in bits(xm))
    size_x = xm.bit_count()
    cross = size_x * (n - size_x)
    inside = n * (n - 1) // 2 - cross
    red_distance = red_inside + (cross - red_across)
    blue_distance = (inside - red_inside) + red_across
    colour = RED if red_distance <= blue_distance else BLUE
    minority = []
    for x in range(n):
        for y in range(x + 1, n):
            across = ((xm >> x) & 1) != ((xm >> y) & 1)
            if (G.colour(x, y) == colour) != across:
                minority.append((x, y))
    pairs = n * (n - 1) // 2
    smaller = min(size_x, n - size_x)
    size_delta = Fraction(max(0, n // 2 - smaller), n) if n else Fraction(0)
    dist = min(red_distance, blue_distance)
    edit_delta = Fraction(dist, pairs) if pairs else Fraction(0)
    return BipartitionAssessment(xm, ym, colour, minority, red_distance, blue_distance,
                                 size_delta, edit_delta, max(size_delta, edit_delta))


def improve_bipartition(G: ColouredCompleteGraph, X, max_rounds: int = 1000) -> BipartitionAssessment:
    """Greedily move single vertices across while the minority count drops.

    A local improver only; it does not claim an optimal bipartition.
    """
    xm = _as_mask(X, G.n)
    best = assess_bipartition(G, xm)
    for _ in range(max_rounds):
        moved = False
        for v in range(G.n):
            cand = assess_bipartition(G, xm ^ (1 << v))
            if len(cand.minority_edges) < len(best.minority_edges):
                xm, best, moved = xm ^ (1 << v), cand, True
        if not moved:
            break
    return best


@dataclass
class BalanceAssessment:
    epsilon: Fraction

    @property
    def value(self) -> float:
        return float(self.epsilon)


def assess_balance(G: ColouredCompleteGraph) -> BalanceAssessment:
    """Least epsilon with sum_x |d_R(x) - (n-1)/2| <= epsilon * C(n,2)."""
    n = G.n
    if n < 2:
        return BalanceAssessment(Fraction(0))
    # work with doubled degrees to stay in integers
    total = sum(abs(2 * d - (n - 1)) for d in G.red_degrees)
    return BalanceAssessment(Fraction(total, 2) / (n * (n - 1) // 2))


@dataclass
class QuasirandomnessAssessment:
    sigma: float
    score: float
    sigma_exact: Fraction
    score_exact: Fraction


def assess_quasirandomness(G: ColouredCompleteGraph) -> QuasirandomnessAssessment:
    """sigma = red density; score = n^-3 * sum over ordered pairs |codeg_R - sigma^2 n|."""
    n = G.n
    pairs = n * (n - 1) // 2
    if n < 2:
        return QuasirandomnessAssessment(0.0, 0.0, Fraction(0), Fraction(0))
    e = G.red_edge_count
    # |codeg - e^2 n / pairs^2| scaled by pairs^2 keeps everything integral
    target = e * e * n
    scale = pairs * pairs
    red = G.red
    total = 0
    for x in range(n):
        rx = red[x]
        for y in range(x + 1, n):
            total += abs((rx & red[y]).bit_count() * scale - target)
    score = Fraction(2 * total, scale * n ** 3)
    sigma = Fraction(e, pairs)
    return QuasirandomnessAssessment(float(sigma), float(score), sigma, score)
