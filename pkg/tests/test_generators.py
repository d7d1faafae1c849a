import pytest

from treecover.generators import (block_shapes, chord_sets, exhaustive_corpus, gen_cycle, gen_diamond,
                                  gen_fan, gen_gap_family, gen_necklace, gen_random_cut_outerplanar)
from treecover.graph import validate_class


def test_family_sizes():
    assert gen_cycle(5).m == 5
    assert gen_diamond().m == 5
    assert gen_fan(4).m == 6 + 3
    assert gen_fan(1).edges == gen_diamond().edges
    assert gen_necklace(1).m == 6
    assert gen_necklace(3).m == 15
    assert gen_gap_family(3).edges == gen_necklace(3).edges


@pytest.mark.parametrize("bad", [lambda: gen_cycle(2), lambda: gen_fan(0), lambda: gen_necklace(0),
                                 lambda: gen_gap_family(1), lambda: gen_random_cut_outerplanar(0, 0, 5)])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        bad()


def test_random_graphs_are_seeded_and_in_class():
    for seed in range(20):
        g = gen_random_cut_outerplanar(seed, 4, 10)
        assert g.edges == gen_random_cut_outerplanar(seed, 4, 10).edges
        assert validate_class(g).accepted
    assert gen_random_cut_outerplanar(1, 4, 10).edges != gen_random_cut_outerplanar(2, 4, 10).edges


def test_chord_sets_of_a_hexagon():
    sets = list(chord_sets(6, 3))
    # empty, 9 single chords, 21 crossing-free pairs, 14 triangulations
    assert len(sets) == 1 + 9 + 21 + 14


def test_block_shapes_and_corpus_counts():
    assert len(block_shapes(6)) == 6
    assert [len(exhaustive_corpus(k, 7)) for k in range(3, 9)] == [1, 2, 4, 7, 12, 22]
    assert all(validate_class(g).accepted for g in exhaustive_corpus(9, 7))
