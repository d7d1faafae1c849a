from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from treecover.elements import whole_element
from treecover.generators import gen_random_cut_outerplanar
from treecover.oracle import bf_tree_number, nash_williams_arboricity
from treecover.treenum import analyze, construct_cover, tree_number

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

graphs = st.builds(gen_random_cut_outerplanar, st.integers(0, 10**6), st.integers(1, 6),
                   st.integers(3, 12), st.floats(0.0, 1.0))
small = st.builds(gen_random_cut_outerplanar, st.integers(0, 10**6), st.integers(1, 3),
                  st.integers(3, 6), st.floats(0.0, 1.0)).filter(lambda g: g.m <= 14)


@SETTINGS
@given(graphs)
def test_witness_is_a_minimal_tree_cover(g):
    cover = construct_cover(g)
    assert cover.is_valid(g)
    assert len(cover) == tree_number(g)


@SETTINGS
@given(graphs)
def test_report_is_consistent(g):
    rep = analyze(whole_element(g))
    assert rep.tau == rep.recurrence_tau + rep.correction
    assert rep.tau >= 1


@SETTINGS
@given(small)
def test_agrees_with_oracle(g):
    tau = tree_number(g)
    assert tau == bf_tree_number(g)
    assert tau >= nash_williams_arboricity(g)
