import pytest

from conftest import corpus
from treecover.elements import (Context, ElementError, chord_level, contract, fitness_path,
                                indifferent_set, make_element, sub_edges, whole_element)
from treecover.generators import gen_cycle, gen_diamond, gen_fan, gen_necklace
from treecover.graph import Graph

RING = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 0),
        (0, 2), (0, 8), (2, 4), (5, 7)]


def test_cycle_is_simple_and_diamond_is_not():
    L = whole_element(gen_cycle(6))
    assert L.kind == "simple"
    assert L.edges == frozenset(range(6))
    # wrapped at vertex 1, the triangle 2-3-0 hangs off two outer edges
    D = whole_element(gen_diamond())
    assert [(M.u, M.v, len(M.edges)) for M in D.subelements] == [(2, 0, 3)]


def test_necklace_petals_are_point_subelements():
    L = whole_element(gen_necklace(3))
    assert L.end_nodes == (1, 1)
    subs = L.subelements
    assert [(M.u, M.v) for M in subs] == [(0, 0), (2, 2), (4, 4)]
    assert all(len(M.edges) == 3 and M.kind == "simple" for M in subs)


def test_contraction_of_necklace_is_a_bare_cycle():
    L = whole_element(gen_necklace(3))
    r = contract(L)
    assert r.graph.m == 6
    assert all(r.graph.degree(v) == 2 for v in r.graph.active_vertices())
    assert sorted(r.contraction_nodes) == [0, 1, 2]
    assert r.chord_count() == 0
    assert [r.labels[x] for x in r.end_nodes] == [1, 1]


def test_contraction_can_leave_a_digon():
    L = whole_element(gen_fan(4))
    (M,) = L.subelements
    assert (M.u, M.v) == (2, 0)
    r = contract(L)
    assert r.graph.m == 2
    assert r.graph.edges[0] == tuple(reversed(r.graph.edges[1]))
    assert r.label(r.contraction_nodes[0]) == "m0"


def test_nested_subelements():
    L = whole_element(Graph.from_edges(RING))
    (M,) = L.subelements
    assert (M.u, M.v, len(M.edges)) == (2, 0, 12)
    (N,) = M.subelements
    assert (N.u, N.v, len(N.edges)) == (5, 7, 3)
    assert contract(M).graph.m == 9


def test_subelements_are_disjoint_and_inside():
    for g in corpus(10):
        stack = [Context(g).whole()]
        while stack:
            L = stack.pop()
            seen = set()
            for M in L.subelements:
                assert M.edges < L.edges
                assert not (M.vertices & seen)
                assert L.u not in M.vertices and L.v not in M.vertices
                seen |= M.vertices
                stack.append(M)
            if L.subelements:
                r = contract(L)
                assert all(r.graph.degree(x) == 2 for x in r.contraction_nodes.values())


def test_chord_levels_in_a_fan():
    g = gen_fan(4)
    (M,) = whole_element(g).subelements
    by_pair = {tuple(sorted(e)): i for i, e in enumerate(g.edges)}
    c02, c03, c04 = by_pair[(0, 2)], by_pair[(0, 3)], by_pair[(0, 4)]
    assert sorted(sub_edges(M, c02)) == [c03, c04]
    assert chord_level(M, c02) == 2
    assert chord_level(M, c04) == 0
    assert indifferent_set(M, c03) == [c04]
    with pytest.raises(ElementError):
        indifferent_set(M, c02)


def test_fitness_paths():
    p = fitness_path(gen_diamond(), 1)
    assert p.vertices == (0, 1, 2) and not p.closed
    c = fitness_path(gen_cycle(5), 0)
    assert c.closed and len(c.edges) == 5
    with pytest.raises(ElementError):
        fitness_path(gen_diamond(), 0)


def test_make_element_validates_end_nodes():
    ctx = Context(gen_necklace(2))
    with pytest.raises(ElementError):
        make_element(ctx, ctx.tree.root, 1, 1)
    L = make_element(ctx, ctx.tree.root, 0, 0)
    assert len(L.edges) == 3


def test_element_json_mirrors_tree():
    d = whole_element(gen_necklace(2)).to_json()
    assert d["kind"] == "composite"
    assert len(d["children"]) == 2
    assert all(c["kind"] == "simple" for c in d["children"])
