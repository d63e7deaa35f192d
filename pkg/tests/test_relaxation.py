from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from redblue import patterns as P
from redblue.coloured_graph import PatternGraph, construct_partitioned, construct_quasirandom
from redblue.relaxation import (CROSSOVER, DegreeCodegreeVector, canonical_grid_margin, canonical_score,
                                check_trace, complete_multipartite_red, equalize, g_sigma,
                                is_canonical_grid, is_graphical, lambda_Q, moreover_bound_grid,
                                objective_f, optimize_lambda_Q, pairs_at_vertex, profile_crossover,
                                q_count_multipartite, q_strict_margins, rrbb_b, rrbb_classify_pairs,
                                rrbb_m, rrbb_pair_functions, small_inequality_checks, tau_star,
                                tradeoff_gap_closed_form, tradeoff_gap_grid, tradeoff_rhs,
                                vector_from_graph, vector_from_t_offsets)
from redblue.counting import count_ccextt_codegree


def test_graph_vectors_lie_in_relaxation():
    for G in (construct_partitioned(9, 4), construct_quasirandom(11, 0.6, 3)):
        v = vector_from_graph(G, exact=True)
        assert v.in_S() and v.p3_gap() == 0 and all(v.graphical())
        assert vector_from_graph(G).in_S()
        # f is the RRBB density written through degrees and codegrees
        n = G.n
        assert abs(float(objective_f(v)) - sum(
            (G.red[i] & G.red[j]).bit_count() / n * (G.red_deg(i) / n + G.red_deg(j) / n
                                                     - 2 * (G.red[i] & G.red[j]).bit_count() / n)
            for i in range(n) for j in range(i + 1, n)) / n ** 2) < 1e-12


def test_vector_json_round_trip():
    v = vector_from_graph(construct_partitioned(5, 2), exact=True)
    assert DegreeCodegreeVector.from_json(v.as_json()) == v
    w = v.to_float()
    assert DegreeCodegreeVector.from_json(w.as_json()) == w


def test_t_offsets_vector():
    d = [Fraction(k, 10) for k in (3, 5, 6, 8)]
    offs = [Fraction(k, 10) for k in (1, -1, 2, -2, 0, 0)]
    v = vector_from_t_offsets(d, offs)
    assert v.in_S()
    ell = v.ell
    assert [t - ell for t in v.t_values()] == offs
    with pytest.raises(ValueError):
        vector_from_t_offsets(d, [Fraction(1)] * 6)


def test_equalize_toy_trace():
    d = [Fraction(1, 2)] * 4
    offs = [Fraction(k, 10) for k in (3, -3, 1, -1, 0, 0)]
    v = vector_from_t_offsets(d, offs)
    tr = equalize(v, Fraction(1, 10))
    assert tr.terminated and check_trace(tr, 4) == []
    assert [s for s, _ in tr.steps] == [Fraction(8, 10), Fraction(16, 25), Fraction(12, 25),
                                        Fraction(8, 25), Fraction(4, 25)]
    assert tr.final.in_S()
    assert tr.as_csv().splitlines()[0] == "step,Sigma,f"


def test_equalize_float_mode_tolerance():
    v = vector_from_graph(construct_quasirandom(10, 0.5, 2))
    tr = equalize(v, 0.1)
    assert tr.terminated and check_trace(tr, 10, tol=1e-9) == []


def test_equalize_rejects_bad_gamma():
    with pytest.raises(ValueError):
        equalize(vector_from_graph(construct_partitioned(4, 2)), 0)


def test_g_and_tau_star():
    assert g_sigma(Fraction(3, 4), Fraction(9, 16)) == Fraction(27, 256)
    assert tau_star(0.5) == 0.3125
    assert tau_star(Fraction(1, 2)) == Fraction(5, 16)
    assert tau_star(0.75) == 0.5625
    assert profile_crossover() == CROSSOVER
    # tau* maximises g_sigma on tau >= sigma^2
    for s in (0.3, 0.5, 0.61, 0.8):
        taus = np.linspace(s * s, s * s + 1, 20001)
        assert g_sigma(s, tau_star(s)) >= g_sigma(s, taus).max() - 1e-12


def test_moreover_grid():
    assert moreover_bound_grid() >= -1e-12
    # below the crossover the bound is not claimed, and indeed fails
    assert moreover_bound_grid(sigmas=(0.4,)) < 0


def test_pair_functions():
    pf = rrbb_pair_functions(0.5, 0.5, 0.25)
    assert pf.b == 0.0625 and pf.m == 0.0625 and pf.t == 0.125 and pf.graphical
    assert not is_graphical(0.3, 0.3, 0.4)
    rng = np.random.default_rng(0)
    for _ in range(200):
        p, q = rng.uniform(0.05, 0.95, 2)
        r = rng.uniform(max(0, p + q - 1), min(p, q))
        assert abs(tradeoff_rhs(p, q, r) - rrbb_b(p, q, r) - rrbb_m(p, q, r)
                   - tradeoff_gap_closed_form(p, q, r)) < 1e-12


def test_tradeoff_grid():
    gap, pts = tradeoff_gap_grid()
    assert pts == 1_010_000 and gap >= -1e-12


def test_classify_pairs_balanced_partitioned():
    v = vector_from_graph(construct_partitioned(20, 10), exact=True)
    p, A, others = pairs_at_vertex(v, 0)
    cls = rrbb_classify_pairs(p, A, Fraction(1, 100))
    assert sorted(others[k] for k in cls["T"]) == list(range(1, 10))
    assert sorted(others[k] for k in cls["S"]) == list(range(10, 20))
    assert cls["A0"] == cls["unclassified"] == cls["non_graphical"] == []


def test_canonical_scores():
    H = PatternGraph(5, [(0, 2, "R"), (0, 3, "R"), (0, 4, "R"), (1, 2, "R"), (1, 3, "R"),
                         (1, 4, "R"), (2, 3, "B")])
    assert abs(canonical_score(H, 0.99, 0.01) - 5.8806) < 1e-9
    assert is_canonical_grid(P.rrbb_c4())
    assert is_canonical_grid(P.rbrb_c4())
    # a vertex with edges of one colour only makes the pattern non-canonical
    assert not is_canonical_grid(P.red_k3())
    assert canonical_grid_margin(P.rrbb_c4()) > 0


def test_small_inequalities():
    res = small_inequality_checks(7, 2000)
    assert res["product_sum"]["violations"] == 0
    assert res["mean_deviation"]["violations"] == 0
    with pytest.raises(ValueError):
        small_inequality_checks(1, 0)


def test_lambda_q():
    assert abs(lambda_Q([1 / 3] * 3) - 4 / 27) < 1e-15
    with pytest.raises(ValueError):
        lambda_Q([0.7, 0.7])
    x, val = optimize_lambda_Q()
    assert len(x) == 3 and max(abs(c - 1 / 3) for c in x) < 1e-6 and abs(val - 4 / 27) < 1e-9


def test_q_counts_on_multipartite():
    for sizes in ((2, 3, 4), (5, 5, 5), (1, 2), (3, 3, 3, 3)):
        G = complete_multipartite_red(sizes)
        assert count_ccextt_codegree(G) == q_count_multipartite(sizes)


def test_q_strict_margins_pinned():
    q = q_strict_margins(20, 20, 20)
    assert q["base"] == 444600
    assert set(q["inter_losses"].values()) == {1292}
    assert set(q["intra_losses"].values()) == {780}
    assert abs(q["inter_ratio"] - 1292 / 1400) < 1e-12 and abs(q["intra_ratio"] - 780 / 800) < 1e-12
    assert q["s2_all_positive"]
    assert q["s2_gaps"] == {"-": 30800, "0": 15600, "1": 15600, "2": 15600, "0,1,2": 8000}


def test_objective_examples():
    from redblue.coloured_graph import monochromatic
    from redblue.counting import count_rrrb_codegree, matrix_red_triangles
    n = 12
    v = vector_from_graph(monochromatic(n), exact=True)
    assert objective_f(v) == Fraction(n * (n - 1), 2) / n ** 2 * Fraction(n - 2, n) * Fraction(2, n)
    f = objective_f(vector_from_graph(construct_quasirandom(400, 0.75, 1)))
    assert abs(f / (27 / 256) - 1) < 0.03
    rng = np.random.Generator(np.random.PCG64(2))
    for k in range(100):
        n = int(rng.integers(50, 201))
        G = construct_quasirandom(n, float(rng.uniform(0.1, 0.8)), k)
        c = count_rrrb_codegree(G)
        f = objective_f(vector_from_graph(G, exact=True))
        # exact: the n^4/2 f expansion overcounts by the red codegrees over red pairs
        assert n ** 4 * f / 2 - c == 3 * matrix_red_triangles(G.red_matrix())
        assert abs(c - n ** 4 * f / 2) / c <= Fraction(5, n)


def test_equalize_examples():
    d = [Fraction(1, 2)] * 4
    v = vector_from_t_offsets(d, [Fraction(0)] * 6)
    assert len(equalize(v, Fraction(1, 10)).steps) == 1
    g = Fraction(1, 10)
    v = vector_from_t_offsets(d, [2 * g, -2 * g, 0, 0, 0, 0])
    tr = equalize(v, g)
    assert len(tr.steps) >= 2 and check_trace(tr, 4) == []
    assert all(f1 > f0 for (_, f0), (_, f1) in zip(tr.steps, tr.steps[1:]))
    tr = equalize(vector_from_graph(construct_partitioned(20, 10), exact=True), Fraction(1, 10))
    assert len(tr.steps) - 1 == 1080 and tr.terminated and check_trace(tr, 20) == []
    t = tr.final.t_values()
    ell = tr.final.ell
    assert max(t) < ell + Fraction(1, 10) or min(t) > ell - Fraction(1, 10)


def test_g_examples():
    for s in (Fraction(1, 3), Fraction(3, 5), Fraction(7, 8)):
        assert g_sigma(s, s * s) == s ** 3 * (1 - s)
    taus = np.linspace(0.2, 1.5, 400)
    vals = g_sigma(0.7, taus)
    assert (np.diff(vals, 2) <= 1e-15).all()


def test_pair_function_examples():
    for p in (0.2, 0.5, 0.7):
        pf = rrbb_pair_functions(p, p, p)
        assert abs(pf.b - p * (1 - p)) < 1e-15 and pf.m == 0 and abs(pf.t - p * (1 - p)) < 1e-15
        pf = rrbb_pair_functions(p, 1 - p, 0)
        assert pf.b == 0 and abs(pf.t - (0.5 - p * (1 - p))) < 1e-15
    assert rrbb_pair_functions(0.3, 0.3, 0.5).graphical is False
    half = Fraction(1, 2)
    assert rrbb_classify_pairs(half, [(half, half)] * 3, Fraction(1, 100))["T"] == [0, 1, 2]
    assert rrbb_classify_pairs(half, [(half, 0)] * 3, Fraction(1, 100))["S"] == [0, 1, 2]


def test_canonical_zero_point():
    for key in ("rrbb_c4", "ccext", "rbr_path"):
        H = P.get_pattern(key)
        assert canonical_score(H, 0, 0) == H.h


def test_inequality_equality_cases():
    # sum a_i b_i <= M s/4 is tight at a_i = b_i = s/2
    s, k = 6, 5
    assert sum(3 * 3 for _ in range(k)) * 4 == (k * s) * s
    xs = np.full(7, 0.4)
    x = xs.mean()
    assert abs(((1 - xs ** 2) * (1 + x * xs)).mean() - (1 - x ** 4)) < 1e-15
    assert lambda_Q([0.5, 0.5]) == 0.125 < 4 / 27


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 14), st.floats(0.0, 1.0), st.integers(0, 10 ** 6))
def test_graph_vectors_always_satisfy_constraints(n, sigma, seed):
    v = vector_from_graph(construct_quasirandom(n, sigma, seed), exact=True)
    assert v.in_S() and all(v.graphical())
    assert v.tau >= v.sigma ** 2
