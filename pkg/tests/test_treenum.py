import pytest

from conftest import corpus, walk, whole_report
from treecover.covers import TreeCover
from treecover.elements import Context, contract, whole_element
from treecover.generators import gen_cycle, gen_diamond, gen_fan, gen_necklace
from treecover.graph import ClassRejection, Graph
from treecover.oracle import (_search, bf_is_fit, bf_max_simultaneous_fit, bf_proper_exists, bf_tree_number,
                              nash_williams_arboricity)
from treecover.treenum import (analyze, arboricity_class, construct_cover, is_fit, max_fit_subset,
                               proper_cover_exists, recurrence_tau, step4_literal_tau, tree_number,
                               tree_number_element)

RING = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 0),
        (0, 2), (0, 8), (2, 4), (5, 7)]
TRIPLE = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 0),
          (0, 2), (3, 5), (6, 8)]


@pytest.mark.parametrize("g, tau", [
    (gen_cycle(6), 2), (gen_diamond(), 2), (gen_fan(5), 2),
    (gen_necklace(1), 2), (gen_necklace(2), 2), (gen_necklace(3), 3), (gen_necklace(4), 4),
])
def test_tree_number_examples(g, tau):
    assert tree_number(g) == tau


def test_rejects_graphs_outside_the_class():
    k4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    with pytest.raises(ClassRejection):
        tree_number(k4)


def test_diamond_report():
    rep = tree_number_element(whole_element(gen_diamond()))
    assert rep.tau == 2 and rep.proper_exists
    assert rep.I == (0,) and rep.correction == 0


def test_necklace_report():
    rep = analyze(whole_element(gen_necklace(3)))
    assert rep.n == 3
    assert all(c.tau == 2 and c.proper_exists for c in rep.children)
    assert rep.residual.chord_count == 0
    assert len(rep.I) == 2
    assert rep.tau == rep.recurrence_tau == 3
    # the wrapper vertex is never split by a minimal cover
    assert not rep.proper_exists
    assert not bf_proper_exists(gen_necklace(3), (1, 1), budget=20)


def test_figure_eight_report():
    rep = analyze(whole_element(gen_necklace(1)))
    assert (rep.n, len(rep.I), rep.tau) == (1, 1, 2)


def test_simple_elements_have_tau_two_and_proper_covers():
    for g in corpus(10):
        for r in walk(whole_report(g)):
            if not r.n:
                assert r.tau == 2 and r.proper_exists


def test_report_json_shape():
    d = analyze(whole_element(gen_necklace(2))).to_json()
    assert d["tau"] == 2 and d["n"] == 2
    assert len(d["children"]) == 2
    assert set(d["residual"]) == {"chord_count", "fitness_paths"}


def test_wrapping_tree_counterexample():
    # one tree wraps round the outer cycle and takes two disjoint pieces of the child
    g = Graph.from_edges(RING)
    rep = analyze(whole_element(g))
    assert rep.tau == bf_tree_number(g) == 2
    (child,) = rep.children
    assert child.tau == 3 and child.profile.disjoint
    assert rep.modes == ("cut",)
    assert rep.correction == -2
    assert recurrence_tau(rep.element) == 3
    # lower sandwich bound fails here
    rest = bf_tree_number(contract(rep.element, [child.element]).graph, 30)
    assert rest + child.tau - 2 > rep.tau


def test_restriction_can_exceed_child_tau():
    g = Graph.from_edges(TRIPLE)
    rep = analyze(whole_element(g))
    (child,) = rep.children
    assert (rep.tau, child.tau) == (3, 2)
    inside = sorted(child.element.edges)
    counts = {len({a[e] for e in inside}) for a in _search(g, 3)}
    assert counts == {2, 3}


def test_composite_without_proper_cover():
    g = Graph.from_edges(TRIPLE)
    (L,) = whole_element(g).subelements
    assert (L.u, L.v, len(L.subelements)) == (2, 0, 2)
    assert not proper_cover_exists(L)
    assert not bf_proper_exists(L.as_graph(), L.end_nodes, budget=20)


def test_is_fit_on_simple_and_composite_elements():
    g = gen_diamond()
    assert is_fit(g, 1) and is_fit(g, 3)
    assert is_fit(gen_cycle(5), 2)
    # the wrapper of necklace(2) stays inside one tree in every 2-cover
    L = whole_element(gen_necklace(2))
    assert not is_fit(L, 1) and not bf_is_fit(gen_necklace(2), 1)
    for g in corpus(9):
        L = whole_element(g)
        if not L.subelements:
            continue
        inner = set().union(*(M.vertices for M in L.subelements))
        for x in sorted(L.vertices - inner):
            if g.degree(x) == 2:
                assert is_fit(L, x) == bf_is_fit(g, x)
    with pytest.raises(ValueError):
        is_fit(g, 0)


def test_max_fit_subset_threads():
    hexagon = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    # both candidates lie on the path 0-1-2-3: only one can be split
    assert max_fit_subset(hexagon, [1, 2]) == [1]
    assert bf_max_simultaneous_fit(hexagon, [1, 2]) == 1
    assert max_fit_subset(hexagon, [1, 2], rule="literal") == [1, 2]
    assert max_fit_subset(hexagon, [1, 4]) == [1, 4]
    assert max_fit_subset(gen_cycle(6), [1, 3, 5]) == [1, 3]
    assert max_fit_subset(gen_cycle(6), [1, 3, 5], rule="literal") == [1]
    two_chords = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0),
                                   (0, 4), (4, 6)])
    assert len(max_fit_subset(two_chords, [1, 2])) == 1


def test_max_fit_subset_matches_oracle():
    for g in corpus(12):
        for r in walk(whole_report(g)):
            if not r.n:
                continue
            res = r.residual_data
            cands = [res.contraction_nodes[i] for i, c in enumerate(r.children) if c.proper_exists]
            if cands:
                assert len(max_fit_subset(res.graph, cands)) == bf_max_simultaneous_fit(res.graph, cands, 30)


def test_step4_literal_values():
    assert [step4_literal_tau(gen_necklace(n)) for n in range(1, 5)] == [2, 3, 4, 5]


@pytest.mark.parametrize("g", [gen_cycle(6), gen_diamond(), gen_necklace(3), Graph.from_edges(RING)])
def test_construct_cover_examples(g):
    cover = construct_cover(g)
    assert isinstance(cover, TreeCover)
    assert len(cover) == tree_number(g)
    assert cover.is_valid(g)


def test_proper_witnesses():
    for g in corpus(10):
        for r in walk(whole_report(g)):
            if r.proper_exists:
                cover = construct_cover(r.element, proper=True, report=r)
                assert cover.is_proper(g) and len(cover) == r.tau


def test_proper_request_refused_when_impossible():
    with pytest.raises(ValueError):
        construct_cover(whole_element(gen_necklace(3)), proper=True)


def test_arboricity_class():
    for g in (gen_necklace(4), gen_cycle(6), gen_diamond()):
        assert arboricity_class(g) == 2
    assert nash_williams_arboricity(gen_diamond()) == 2
    assert arboricity_class(Graph.from_edges([(0, 1), (1, 2)])) == 1


def test_lower_bound_consistency():
    for g in corpus(11):
        assert whole_report(g).tau >= nash_williams_arboricity(g)


def test_other_wrappers_give_the_same_tau():
    for g in corpus(9):
        base = whole_report(g).tau
        for v in Context(g).emb[Context(g).tree.root].outer_cycle:
            assert analyze(Context(g, wrapper=v).whole()).tau == base
