"""
Turaev Cinsi Testleri
Kauffman durumları, s_A / s_B, şerit çizgesi kehaneti
"""

import pytest

from algorithms.corpus import corpus_index, ingest_corpus
from algorithms.diagram import PretzelSpec, mirror, parse_pd, pretzel, torus_knot, unknot
from algorithms.errors import DiagramError, SplitDiagramError
from algorithms.turaev import (
    StateAssignment, count_circles, diagram_genus_upper_bound, is_connected,
    is_homogeneous_diagram, ribbon_genus_oracle, s_a, s_b, seifert_circles,
    turaev_genus_diagram
)


@pytest.fixture(scope='module')
def corpus():
    return corpus_index(ingest_corpus())


def test_trefoil_state_circles():
    d = torus_knot(2, 3)
    assert s_a(d) == 2
    assert s_b(d) == 3
    assert count_circles(d, StateAssignment.all_a(3)).count == 2
    assert count_circles(d, StateAssignment.all_b(3)).count == 3
    assert seifert_circles(d) == 2


def test_mirror_swaps_state_counts():
    d = torus_knot(2, 3)
    assert s_a(mirror(d)) == s_b(d)
    assert s_b(mirror(d)) == s_a(d)


def test_state_assignment_validation():
    assert StateAssignment.from_bits(0b101, 3).kinds == ('B', 'A', 'B')
    assert StateAssignment(('a', 'b')).bits == 0b10
    with pytest.raises(DiagramError):
        StateAssignment(('A', 'X'))
    with pytest.raises(DiagramError):
        count_circles(torus_knot(2, 3), StateAssignment.all_a(2))


def test_alternating_identity(corpus):
    for name, entry in corpus.items():
        d = entry.diagram()
        if d.is_alternating() and d.crossing_count <= 9:
            assert s_a(d) + s_b(d) == d.crossing_count + 2, name
            assert turaev_genus_diagram(d) == 0, name


def test_six_two():
    d = parse_pd('PD[X[7,12,8,1],X[11,6,12,7],X[5,10,6,11],X[1,4,2,5],X[9,3,10,2],X[3,9,4,8]]')
    assert s_a(d) + s_b(d) == 8
    assert turaev_genus_diagram(d) == 0


def test_ribbon_oracle_matches_state_formula(corpus):
    for name, entry in corpus.items():
        d = entry.diagram()
        assert ribbon_genus_oracle(d) == turaev_genus_diagram(d), name


@pytest.mark.parametrize('p,q', [(p, q) for p in range(1, 6) for q in range(1, p + 1)])
def test_pretzel_genus_one(p, q):
    d = pretzel(PretzelSpec(p, q))
    assert s_a(d) == 2 * q + 2
    assert s_b(d) == 2 * p + 2
    assert turaev_genus_diagram(d) == 1
    assert ribbon_genus_oracle(d) == 1


def test_diagram_genus_bounds_table_value(corpus):
    for name, entry in corpus.items():
        assert turaev_genus_diagram(entry.diagram()) >= entry.annotations['turaev_genus'], name


def test_unknot_and_split_diagram():
    assert turaev_genus_diagram(unknot()) == 0
    split = parse_pd('PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],U[1]]')
    assert not is_connected(split)
    with pytest.raises(SplitDiagramError):
        turaev_genus_diagram(split)


def test_genus_upper_bound_takes_minimum():
    d = pretzel(PretzelSpec(1, 1))
    assert diagram_genus_upper_bound([d, torus_knot(2, 3)]) == 0
    with pytest.raises(DiagramError):
        diagram_genus_upper_bound([])


def test_homogeneous():
    assert is_homogeneous_diagram(torus_knot(2, 3))
    assert is_homogeneous_diagram(mirror(torus_knot(3, 4)))


if __name__ == '__main__':
    print('=== TURAEV CİNSİ TESTLERİ ===\n')
    test_trefoil_state_circles()
    test_six_two()
    test_pretzel_genus_one(2, 1)
    print('✓ Turaev testleri geçti')
