from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from redblue.coloured_graph import (BLUE, RED, ColouredCompleteGraph, PatternGraph, assess_balance,
                                    assess_bipartition, assess_quasirandomness, construct_partitioned,
                                    construct_quasirandom, construct_turan_red, improve_bipartition,
                                    monochromatic, red_cycle, turan_part_sizes)
from redblue.patterns import TABLE_FOUR_VERTEX, get_pattern


@st.composite
def graphs(draw, n_max=9):
    n = draw(st.integers(1, n_max))
    s = draw(st.text(alphabet="RB", min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return ColouredCompleteGraph.from_colour_string(n, s)


def test_text_round_trip_and_format():
    G = ColouredCompleteGraph.from_text("4\nRRBBBR\n")
    assert G.to_text() == "4\nRRBBBR\n"
    # row-major upper triangle: (1,2) (1,3) (1,4) (2,3) (2,4) (3,4)
    assert [G.colour(*p) for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]] == list("RRBBBR")


@pytest.mark.parametrize("text", ["", "x\nRRR\n", "3\nRR\n", "3\nRRX\n"])
def test_malformed_text_rejected(text):
    with pytest.raises(ValueError):
        ColouredCompleteGraph.from_text(text)


def test_asymmetric_rows_rejected():
    with pytest.raises(ValueError):
        ColouredCompleteGraph(3, [0b010, 0b000, 0b000])


@given(graphs())
def test_text_round_trip(G):
    assert ColouredCompleteGraph.from_text(G.to_text()) == G


@given(graphs())
def test_degrees_and_codegrees(G):
    n = G.n
    for x in range(n):
        assert G.red_deg(x) + G.blue_deg(x) == n - 1
    for x in range(n):
        for y in range(x + 1, n):
            others = [z for z in range(n) if z not in (x, y)]
            assert G.red_codegree(x, y) == sum(G.is_red(x, z) and G.is_red(y, z) for z in others)
            assert G.blue_codegree(x, y) == sum(not G.is_red(x, z) and not G.is_red(y, z) for z in others)
            # exact identity; note the factor 2 on the blue indicator
            b = 0 if G.is_red(x, y) else 1
            assert G.blue_codegree(x, y) == n - G.red_deg(x) - G.red_deg(y) + G.red_codegree(x, y) - 2 * b


@given(graphs(), st.data())
def test_flip_and_swap(G, data):
    assert G.swap_colours().swap_colours() == G
    if G.n >= 2:
        x = data.draw(st.integers(0, G.n - 1))
        y = data.draw(st.integers(0, G.n - 1).filter(lambda v: v != x))
        F = G.flip_edge(x, y)
        assert F.colour(x, y) != G.colour(x, y)
        assert F.flip_edge(x, y) == G
        assert F.red_edge_count == G.red_edge_count + (1 if F.is_red(x, y) else -1)


def test_flip_loop_rejected():
    with pytest.raises(ValueError):
        red_cycle(5).flip_edge(2, 2)


def test_relabel_and_induced():
    G = red_cycle(5)
    H = G.relabel([4, 3, 2, 1, 0])
    assert sorted(H.red_degrees) == [2] * 5
    assert G.induced([0, 1, 2]).red_edges() == [(0, 1), (1, 2)]


def test_matrix_round_trip():
    G = construct_quasirandom(12, 0.4, 5)
    R = G.red_matrix()
    assert (R == R.T).all() and not R.diagonal().any()
    assert ColouredCompleteGraph.from_matrix(R) == G


def test_constructions():
    G = construct_partitioned(7, 3)
    assert G.red_edge_count == 12
    assert construct_partitioned(7, 3, BLUE).red_edge_count == 21 - 12
    T = construct_turan_red(10, 3)
    assert turan_part_sizes(10, 3) == [4, 3, 3]
    assert T.red_edge_count == 45 - (6 + 3 + 3)
    assert monochromatic(5, RED).red_edge_count == 10
    assert monochromatic(5, BLUE).red_edge_count == 0
    with pytest.raises(ValueError):
        construct_partitioned(5, 6)


def test_quasirandom_is_deterministic_and_dense():
    a = construct_quasirandom(50, 0.3, 11)
    assert a == construct_quasirandom(50, 0.3, 11)
    assert a != construct_quasirandom(50, 0.3, 12)
    assert abs(a.red_edge_count / 1225 - 0.3) < 0.05
    assert construct_quasirandom(6, 0.0, 1).red_edge_count == 0
    assert construct_quasirandom(6, 1.0, 1).red_edge_count == 15


def test_pattern_parse_and_literal():
    H = PatternGraph.parse("1-2:R,2-3:B")
    assert H.h == 3 and H.edges == ((0, 1, RED), (1, 2, BLUE))
    assert H.to_literal() == "1-2:R,2-3:B"
    for bad in ["1-1:R", "1-2:X", "1-2:R,2-1:B", "12R"]:
        with pytest.raises(ValueError):
            PatternGraph.parse(bad)


def test_aut_counts_table_patterns():
    # brute-force automorphism counts of the tabulated four-vertex patterns
    assert [get_pattern(k).aut_count for k in TABLE_FOUR_VERTEX] == [4, 2, 2, 2, 2, 2, 4]


def test_pattern_isomorphism():
    H = get_pattern("rrbb_c4")
    assert H.is_isomorphic(H.relabel([2, 3, 0, 1]))
    assert H.is_isomorphic(H.swap())
    assert not get_pattern("rrrb_c4").is_isomorphic(get_pattern("rrrb_c4").swap())


def test_bipartition_assessment():
    G = construct_partitioned(10, 5)
    a = assess_bipartition(G, range(5))
    assert a.minority_edges == [] and a.delta == 0 and a.bip_colour == RED
    G2 = G.flip_edge(0, 1)
    a2 = assess_bipartition(G2, range(5))
    assert a2.minority_edges == [(0, 1)] and a2.edit_delta == Fraction(1, 45)
    # one misplaced vertex is moved back by the greedy improver
    b = improve_bipartition(G2, [0, 1, 2, 3, 5])
    assert b.X == 0b11111 and b.minority_edges == [(0, 1)]
    # ties between the colours go to red
    assert assess_bipartition(construct_partitioned(2, 1), [0]).bip_colour == RED


def test_balance_and_quasirandomness():
    assert assess_balance(construct_partitioned(8, 4)).epsilon == Fraction(4, 28)
    assert assess_balance(red_cycle(5)).epsilon == 0
    assert assess_balance(monochromatic(6)).epsilon == Fraction(15, 15)
    q = assess_quasirandomness(construct_quasirandom(200, 0.5, 1))
    assert q.score < 0.05
    assert assess_quasirandomness(construct_partitioned(40, 20)).score > 0.2
    assert abs(q.sigma - float(q.sigma_exact)) < 1e-15


def test_construction_examples():
    from redblue.counting import count_copies
    assert count_copies(get_pattern("rbrb_c4"), construct_partitioned(4, 2)) == 2
    assert count_copies(get_pattern("rbrb_c4"), construct_partitioned(6, 3)) == 18
    assert construct_partitioned(5, 0).red_edge_count == 0
    T = construct_turan_red(7, 3)
    assert turan_part_sizes(7, 3) == [3, 2, 2]
    assert count_copies(get_pattern("ccextt"), T) == 38
    assert construct_turan_red(6, 1).red_edge_count == 0
    with pytest.raises(ValueError):
        construct_turan_red(6, 0)


def test_bipartition_examples():
    b = assess_bipartition(construct_partitioned(6, 3).flip_edge(0, 1), [0, 1, 2])
    assert len(b.minority_edges) == 1 and b.delta == Fraction(1, 15)
    # all red: red distance 6 (the intra-part pairs) beats blue distance 9
    a = assess_bipartition(monochromatic(6), [0, 1, 2])
    assert (a.red_distance, a.blue_distance, len(a.minority_edges)) == (6, 9, 6)
    assert a.delta == Fraction(6, 15)


def test_quasirandomness_pins():
    # regression constants computed once with the fixed seeds
    q = assess_quasirandomness(construct_quasirandom(400, 0.75, 1))
    assert q.score <= 0.02 and abs(q.score - 0.019188886667840497) < 1e-15
    assert q.sigma_exact == Fraction(59699, 79800)
    # balanced partitioned K_20, checked against a direct sum over ordered pairs
    G = construct_partitioned(20, 10)
    s = Fraction(G.red_edge_count, 190)
    direct = sum(abs(G.red_codegree(x, y) - s * s * 20) for x in range(20) for y in range(20) if x != y) / 20 ** 3
    assert assess_quasirandomness(G).score_exact == direct == Fraction(3449, 14440)
