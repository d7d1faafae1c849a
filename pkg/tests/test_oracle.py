import pytest

from treecover.elements import whole_element
from treecover.generators import gen_cycle, gen_diamond, gen_necklace
from treecover.graph import Graph
from treecover.oracle import (BudgetExceeded, bf_enumerate_min_covers, bf_is_fit, bf_max_simultaneous_fit,
                              bf_proper_exists, bf_simultaneous_fit, bf_tree_number,
                              nash_williams_arboricity)


def test_small_tree_numbers():
    assert bf_tree_number(Graph.from_edges([(0, 1), (1, 2)])) == 1
    assert bf_tree_number(gen_cycle(4)) == 2
    assert bf_tree_number(gen_necklace(3)) == 3


def test_elements_are_accepted():
    assert bf_tree_number(whole_element(gen_diamond())) == 2


def test_enumerated_covers_are_valid_and_distinct():
    g = gen_cycle(4)
    covers = bf_enumerate_min_covers(g)
    # a 4-cycle splits into a path and the complementary path: 4 single edges + 2 pairs of opposite halves
    assert all(len(c) == 2 and c.is_valid(g) for c in covers)
    assert len({c.parts for c in covers}) == len(covers) == 6
    assert len(bf_enumerate_min_covers(g, limit=2)) == 2


def test_fit_and_proper_queries():
    d = gen_diamond()
    assert bf_is_fit(d, 1) and bf_is_fit(d, 3)
    # star {1-2, 2-3, 0-2} beside the path 1-0-3 splits both
    assert bf_simultaneous_fit(d, [1, 3])
    assert bf_max_simultaneous_fit(d, [1, 3]) == 2
    hexagon = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    assert not bf_simultaneous_fit(hexagon, [1, 2])
    assert bf_proper_exists(d, (1, 3))
    with pytest.raises(ValueError):
        bf_is_fit(d, 0)
    with pytest.raises(ValueError):
        bf_proper_exists(d)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        bf_tree_number(gen_necklace(4), budget=10)
    with pytest.raises(BudgetExceeded):
        nash_williams_arboricity(gen_cycle(20))


def test_nash_williams():
    assert nash_williams_arboricity(gen_cycle(7)) == 2
    assert nash_williams_arboricity(Graph.from_edges([(0, 1), (1, 2), (2, 3)])) == 1
    k4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    assert nash_williams_arboricity(k4) == 2
    # two paths 0-1-2-3 and 2-0-3-1
    assert bf_tree_number(k4) == 2
