"""Named coloured patterns.

Four-cycle patterns use vertices 0..3 on the cycle 0-1-2-3-0.
"""
from __future__ import annotations

import re

from .coloured_graph import BLUE, RED, PatternGraph, QuantumPattern


def _cycle(colours, name, chords=()):
    h = len(colours)
    edges = [(i, (i + 1) % h, c) for i, c in enumerate(colours)]
    edges += list(chords)
    return PatternGraph(h, edges, name=name)


def rbr_path() -> PatternGraph:
    """Two-edge path with one red and one blue edge (the Goodman path)."""
    return PatternGraph(3, [(0, 1, RED), (1, 2, BLUE)], name="rbr_path")


def rbrb_c4() -> PatternGraph:
    """Alternating 4-cycle."""
    return _cycle([RED, BLUE, RED, BLUE], "rbrb_c4")


def rrbb_c4() -> PatternGraph:
    """4-cycle with two adjacent red edges (vertex 1 red-red, vertex 3 blue-blue)."""
    return _cycle([RED, RED, BLUE, BLUE], "rrbb_c4")


def rrrb_c4() -> PatternGraph:
    """4-cycle with exactly three red edges."""
    return _cycle([RED, RED, RED, BLUE], "rrrb_c4")


def ccext() -> PatternGraph:
    """Alternating 4-cycle plus one red chord."""
    return _cycle([RED, BLUE, RED, BLUE], "ccext", chords=[(0, 2, RED)])


def rrbbext_a() -> PatternGraph:
    """RRBB cycle plus a red chord joining its red-red and blue-blue vertices."""
    return _cycle([RED, RED, BLUE, BLUE], "rrbbext_a", chords=[(1, 3, RED)])


def rrbbext_b() -> PatternGraph:
    """RRBB cycle plus a red chord joining its two bichromatic vertices."""
    return _cycle([RED, RED, BLUE, BLUE], "rrbbext_b", chords=[(0, 2, RED)])


def ccextt() -> PatternGraph:
    """Red 4-cycle plus one blue chord (red K_{1,1,2} with the blue pair on the 2-side)."""
    return _cycle([RED, RED, RED, RED], "ccextt", chords=[(0, 2, BLUE)])


def alt_cycle(length: int) -> PatternGraph:
    if length < 4 or length % 2:
        raise ValueError("alternating cycles need even length >= 4")
    return _cycle([RED if i % 2 == 0 else BLUE for i in range(length)], f"alt_cycle_{length}")


def alt_path(length: int, first: str = RED) -> PatternGraph:
    """Alternating path with `length` edges, the first one of colour `first`."""
    if length < 1:
        raise ValueError("paths need at least one edge")
    second = BLUE if first == RED else RED
    edges = [(i, i + 1, first if i % 2 == 0 else second) for i in range(length)]
    return PatternGraph(length + 1, edges, name=f"alt_path_{length}")


def red_k3() -> PatternGraph:
    return PatternGraph(3, [(0, 1, RED), (1, 2, RED), (0, 2, RED)], name="red_k3")


def red_edge() -> PatternGraph:
    return PatternGraph(2, [(0, 1, RED)], name="red_edge")


# Red-blue K_4's, named by their red graph.
def k4_red_matching() -> PatternGraph:
    return PatternGraph.complete_from(4, [(0, 1), (2, 3)], name="k4_red_2k2")


def k4_red_c4() -> PatternGraph:
    return PatternGraph.complete_from(4, [(0, 1), (1, 2), (2, 3), (3, 0)], name="k4_red_c4")


def k4_red_p4() -> PatternGraph:
    return PatternGraph.complete_from(4, [(0, 1), (1, 2), (2, 3)], name="k4_red_p4")


def k4_red_k4minus() -> PatternGraph:
    return PatternGraph.complete_from(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], name="k4_red_k4minus")


def k4_red_paw() -> PatternGraph:
    return PatternGraph.complete_from(4, [(0, 1), (1, 2), (0, 2), (2, 3)], name="k4_red_paw")


def alternating_c4_quantum() -> QuantumPattern:
    """2*(red 2K2) + 2*(red C4) + (red P4): the K_4 colourings holding alternating 4-cycles."""
    return QuantumPattern([(2, k4_red_matching()), (2, k4_red_c4()), (1, k4_red_p4())])


def rrrb_quantum() -> QuantumPattern:
    """2*(red K4 minus an edge) + 2*(red paw) + (red P4): K_4 colourings holding RRRB cycles."""
    return QuantumPattern([(2, k4_red_k4minus()), (2, k4_red_paw()), (1, k4_red_p4())])


FIXED = {
    "rbr_path": rbr_path,
    "rbrb_c4": rbrb_c4,
    "rrbb_c4": rrbb_c4,
    "rrrb_c4": rrrb_c4,
    "ccext": ccext,
    "rrbbext_a": rrbbext_a,
    "rrbbext_b": rrbbext_b,
    "ccextt": ccextt,
    "red_k3": red_k3,
    "red_edge": red_edge,
}

# Four-vertex patterns with a row in the summary table of maxima.
TABLE_FOUR_VERTEX = ("rbrb_c4", "rrbb_c4", "rrrb_c4", "ccext", "rrbbext_a", "rrbbext_b", "ccextt")

PATTERN_NAMES = tuple(FIXED) + ("alt_cycle_<2t>", "alt_path_<t>", "alt_walk_<t>")

_PARAM = re.compile(r"^(alt_cycle|alt_path|alt_walk)_(\d+)$")


def get_pattern(name: str) -> PatternGraph:
    """Look a pattern up by registry name; 'swap:' prefix swaps its colours."""
    if name.startswith("swap:"):
        return get_pattern(name[5:]).swap()
    if name in FIXED:
        return FIXED[name]()
    m = _PARAM.match(name)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if kind == "alt_cycle":
            return alt_cycle(k)
        if kind == "alt_path":
            return alt_path(k)
        raise ValueError("alternating walks are ordered tuples, not subgraph patterns; "
                         "count them with walk_profile")
    raise KeyError(f"unknown pattern {name!r}; known: {', '.join(PATTERN_NAMES)}")
