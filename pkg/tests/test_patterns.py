import pytest

from redblue import patterns as P
from redblue.coloured_graph import PatternGraph


def test_registry_shapes():
    for key in P.TABLE_FOUR_VERTEX:
        H = P.get_pattern(key)
        assert H.h == 4 and H.is_connected()
    assert P.rbrb_c4().to_literal() == "1-2:R,1-4:B,2-3:B,3-4:R"
    assert P.ccext().edge_count == 5 and P.ccextt().edge_count == 5
    assert P.rbr_path().h == 3


def test_parametrised_names():
    assert P.get_pattern("alt_cycle_6").edge_count == 6
    assert P.get_pattern("alt_path_3").edge_count == 3
    assert P.get_pattern("swap:rrrb_c4").is_isomorphic(P.rrrb_c4().swap())
    with pytest.raises(ValueError):
        P.alt_cycle(5)
    with pytest.raises(ValueError):
        P.get_pattern("alt_walk_3")
    with pytest.raises(KeyError):
        P.get_pattern("nope")


def test_four_vertex_colourings_are_complete():
    for H in (P.k4_red_matching(), P.k4_red_c4(), P.k4_red_p4(), P.k4_red_k4minus(), P.k4_red_paw()):
        assert H.is_complete()
    assert P.k4_red_c4().is_isomorphic(PatternGraph.complete_from(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
