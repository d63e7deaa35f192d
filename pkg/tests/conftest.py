"""Independent brute-force oracles shared by the tests.

These deliberately avoid the package's counting code: they enumerate
injective maps or vertex tuples directly.
"""
import itertools

import numpy as np
import pytest

from redblue.coloured_graph import construct_quasirandom


def brute_copies(H, G):
    """Distinct colour-matching images of H in G, by trying every injective map."""
    images = set()
    for img in itertools.permutations(range(G.n), H.h):
        if all(G.colour(img[i], img[j]) == c for i, j, c in H.edges):
            images.add(frozenset(frozenset((img[i], img[j])) for i, j, _ in H.edges))
    return len(images)


def brute_walks(G, t):
    """Alternating walks with t edges, as ordered vertex tuples."""
    total = 0
    for walk in itertools.product(range(G.n), repeat=t + 1):
        if any(walk[k] == walk[k + 1] for k in range(t)):
            continue
        cols = [G.colour(walk[k], walk[k + 1]) for k in range(t)]
        if all(cols[k] != cols[k + 1] for k in range(t - 1)):
            total += 1
    return total


def brute_alt_cycles(G, length):
    """Alternating cycles as unlabelled edge sets."""
    found = set()
    for cyc in itertools.permutations(range(G.n), length):
        cols = [G.colour(cyc[k], cyc[(k + 1) % length]) for k in range(length)]
        if all(cols[k] != cols[(k + 1) % length] for k in range(length)):
            found.add(frozenset(frozenset((cyc[k], cyc[(k + 1) % length])) for k in range(length)))
    return len(found)


def random_graphs(count, n_lo, n_hi, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        yield construct_quasirandom(n, float(rng.uniform(0.1, 0.9)), int(rng.integers(0, 2 ** 31)))


@pytest.fixture
def k9():
    # pinned reference host used by several regression tests
    return construct_quasirandom(9, 0.5, 3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
