"""Closed-form bounds, extremal values and baseline densities.

Exact values are ints or Fractions.  Floors are evaluated in integer
arithmetic so no float rounding can enter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .coloured_graph import PatternGraph

CROSSOVER = (1 + math.sqrt(2)) / 4


@dataclass(frozen=True)
class FormulaValue:
    name: str
    exact: Fraction | None
    float: float

    def as_json(self) -> dict:
        exact = None
        if self.exact is not None:
            exact = str(self.exact.numerator) if self.exact.denominator == 1 else str(self.exact)
        return {"name": self.name, "exact": exact, "float": self.float}


def _frac(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(str(x))  # floats via their shortest repr, so 0.75 -> 3/4


def _check_sigma(sigma) -> Fraction:
    s = _frac(sigma)
    if not 0 <= s <= 1:
        raise ValueError("sigma must lie in [0, 1]")
    return s


def falling(n: int, k: int) -> int:
    """(n)_k = n(n-1)...(n-k+1); zero when k > n >= 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1
    for i in range(k):
        out *= n - i
    return out


# ---------------------------------------------------------------------------
# exact extremal numbers

def goodman_max(n: int) -> int:
    """floor(n/2 * floor((n-1)/2) * ceil((n-1)/2)): the most bichromatic triangles."""
    if n < 3:
        return 0
    return (n * ((n - 1) // 2) * (n // 2)) // 2   # ceil((n-1)/2) = floor(n/2)


def rbrb_max(n: int) -> int:
    """Most alternating 4-cycles: (1/2) floor(n^2/4) floor((n-2)^2/4)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n * n // 4) * ((n - 2) ** 2 // 4) // 2


def alt_cycle_max(n: int, t: int) -> int:
    """Bound on alternating 4t-cycles: (1/2t) (ceil(n/2))_{2t} (floor(n/2))_{2t}."""
    if t < 1:
        raise ValueError("t must be positive")
    if n < 4 * t:
        return 0
    num = falling((n + 1) // 2, 2 * t) * falling(n // 2, 2 * t)
    return num // (2 * t) if num % (2 * t) == 0 else Fraction(num, 2 * t)


def walk_bound(n: int, t: int) -> Fraction:
    """Alternating t-walks: at most 2n((n-1)/2)^t."""
    if t < 1:
        raise ValueError("t must be positive")
    return 2 * n * Fraction(n - 1, 2) ** t


def path_bound(n: int, t: int) -> Fraction:
    """Alternating paths of length t: at most n((n-1)/2)^t."""
    if t < 1:
        raise ValueError("t must be positive")
    return n * Fraction(n - 1, 2) ** t


def unbalanced_walk_bound(n: int, t: int, epsilon) -> Fraction:
    """(1 - eps^4/4) * 2n((n-1)/2)^t, the bound for eps-unbalanced colourings."""
    eps = _frac(epsilon)
    if not 0 <= eps <= 1:
        raise ValueError("epsilon must lie in [0, 1]")
    return (1 - eps ** 4 / 4) * walk_bound(n, t)


def rrbb_value(n: int, a: int) -> int:
    """RRBB cycles in the (a, n-a)-partitioned graph: 3(a C(n-a,3) + (n-a) C(a,3))."""
    if not 0 <= a <= n:
        raise ValueError("a must lie in 0..n")
    return 3 * (a * math.comb(n - a, 3) + (n - a) * math.comb(a, 3))


def rrbb_candidates(n: int) -> tuple[int, int]:
    """floor and ceil of (n + sqrt(3n - 4))/2, computed with integer square roots."""
    if n < 2:
        return (n, n)
    m = 3 * n - 4
    r = math.isqrt(m)
    # (n + sqrt(m))/2 lies in [(n+r)/2, (n+r+1)/2]; exact when m is a square
    lo = (n + r) // 2
    if r * r == m:
        hi = lo if (n + r) % 2 == 0 else lo + 1
    else:
        # sqrt(m) lies strictly between r and r + 1, so the value is not an integer
        hi = lo + 1
    return (lo, hi)


def rrbb_best_a(n: int) -> set[int]:
    """Argmax of rrbb_value over the two rounded candidates (both when tied)."""
    cands = sorted(set(c for c in rrbb_candidates(n) if 0 <= c <= n))
    best = max(rrbb_value(n, a) for a in cands)
    return {a for a in cands if rrbb_value(n, a) == best}


def rrbb_best_value(n: int) -> int:
    return max(rrbb_value(n, a) for a in rrbb_best_a(n))


def rrrb_values(n: int) -> Fraction:
    """Leading term 27/512 n^4 of the RRRB maximum."""
    return Fraction(27, 512) * n ** 4


def rrrb_profile(sigma, enforce_regime: bool = False) -> Fraction:
    """(1/2) sigma^3 (1 - sigma): RRRB density bound at red density sigma.

    The bound is proved for sigma >= (1 + sqrt 2)/4; enforce_regime raises
    below that, otherwise the expression is evaluated anywhere in [0, 1].
    """
    s = _check_sigma(sigma)
    if enforce_regime and float(s) < CROSSOVER:
        raise ValueError(f"sigma below the proven regime (1+sqrt 2)/4 = {CROSSOVER:.6f}")
    return s ** 3 * (1 - s) / 2


def _uncoloured_aut(h: int, edges) -> int:
    return PatternGraph.complete_from(h, edges).aut_count


def rand_density(F, sigma) -> Fraction:
    """h!/|Aut F| sigma^e (1 - sigma)^(C(h,2) - e) for an uncoloured F = (h, edges)."""
    s = _check_sigma(sigma)
    h, edges = F
    e = len(set((min(a, b), max(a, b)) for a, b in edges))
    return Fraction(math.factorial(h), _uncoloured_aut(h, edges)) * s ** e * (1 - s) ** (h * (h - 1) // 2 - e)


K4_MINUS = (4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
PAW = (4, [(0, 1), (1, 2), (0, 2), (2, 3)])
P4 = (4, [(0, 1), (1, 2), (2, 3)])


def rand_Q(sigma) -> Fraction:
    """Random-graph density of 2*K4^- + 2*paw + P4, which simplifies to 12 sigma^3 (1 - sigma)."""
    return 2 * rand_density(K4_MINUS, sigma) + 2 * rand_density(PAW, sigma) + rand_density(P4, sigma)


def k112_tripartite_max(n: int) -> int:
    """sum_i C(n_i,2) C(n - n_i,2) over the balanced tripartition of n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    q, r = divmod(n, 3)
    sizes = [q + 1] * r + [q] * (3 - r)
    return sum(math.comb(m, 2) * math.comb(n - m, 2) for m in sizes)


def partitioned_pattern_count(H: PatternGraph, a0: int, b0: int, s: int, t: int,
                              bip_colour: str = "R") -> int:
    """#(H, G) for G (s,t)-partitioned, from the count in the (a0,b0)-partitioned base graph."""
    from .coloured_graph import construct_partitioned
    from .counting import count_copies
    if min(s, t) < max(a0, b0):
        raise ValueError("need min(s, t) >= max(a0, b0)")
    if H.h != a0 + b0 or not H.is_connected():
        raise ValueError("H must be connected and span the (a0, b0)-partitioned base graph")
    base = count_copies(H, construct_partitioned(a0 + b0, a0, bip_colour))
    if base == 0:
        raise ValueError("H is not a subgraph of the base partitioned graph")
    if a0 == b0:
        return math.comb(s, a0) * math.comb(t, b0) * base
    return (math.comb(s, a0) * math.comb(t, b0) + math.comb(s, b0) * math.comb(t, a0)) * base


def extension_bound(max_hminus, t: int, copies_in_H: int) -> Fraction:
    """t * max(H^-, n) / #(H^-, H)."""
    if copies_in_H < 1:
        raise ValueError("copies_in_H must be at least 1")
    v = Fraction(max_hminus) * t / copies_in_H
    return v


# ---------------------------------------------------------------------------
# limit densities max(H) = lim max(H,n)/n^h

def table1_density(name: str, t: int | None = None) -> Fraction:
    """Limit density max(H) for the patterns of the summary table.

    alt_walk and alt_path take the length t; alt_cycle_4t takes t.
    """
    fixed = {
        "rbrb_c4": Fraction(1, 32),
        "rrbb_c4": Fraction(1, 16),
        "rrrb_c4": Fraction(27, 512),
        "ccext": Fraction(1, 16),
        "rrbbext_a": Fraction(1, 16),
        "rrbbext_b": Fraction(1, 16),
        "ccextt": Fraction(1, 27),
    }
    base = name[5:] if name.startswith("swap:") else name
    if base in fixed:
        return fixed[base]
    if base in ("alt_walk", "alt_path", "alt_cycle_4t"):
        if t is None or t < 1:
            raise ValueError(f"{base} needs a positive length parameter t")
        if base == "alt_walk":
            return Fraction(1, 2 ** (t - 1))
        if base == "alt_path":
            return Fraction(1, 2 ** t)
        return Fraction(1, t * 2 ** (4 * t + 1))
    raise KeyError(f"no tabulated density for {name!r}")


# ---------------------------------------------------------------------------
# registry for the command line

def _fv(name, value) -> FormulaValue:
    if isinstance(value, (int, Fraction)):
        return FormulaValue(name, Fraction(value), float(value))
    return FormulaValue(name, None, float(value))


FORMULAS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "goodman_max": (("n",), goodman_max),
    "rbrb_max": (("n",), rbrb_max),
    "alt_cycle_max": (("n", "t"), alt_cycle_max),
    "walk_bound": (("n", "t"), walk_bound),
    "path_bound": (("n", "t"), path_bound),
    "unbalanced_walk_bound": (("n", "t", "epsilon"), unbalanced_walk_bound),
    "rrbb_value": (("n", "a"), rrbb_value),
    "rrbb_best_value": (("n",), rrbb_best_value),
    "rrrb_values": (("n",), rrrb_values),
    "rrrb_profile": (("sigma",), rrrb_profile),
    "rand_Q": (("sigma",), rand_Q),
    "k112_tripartite_max": (("n",), k112_tripartite_max),
    "crossover": ((), lambda: CROSSOVER),
}


def evaluate(name: str, **params) -> FormulaValue:
    if name not in FORMULAS:
        raise KeyError(f"unknown formula {name!r}; known: {', '.join(sorted(FORMULAS))}")
    needed, fn = FORMULAS[name]
    missing = [p for p in needed if params.get(p) is None]
    if missing:
        raise ValueError(f"formula {name} needs {', '.join(missing)}")
    return _fv(name, fn(*(params[p] for p in needed)))
