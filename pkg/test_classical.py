"""
Klasik Değişmez Testleri
Goeritz imzası, determinant, Kauffman parantezi ve Jones polinomu
"""

import pytest
import sympy as sp

from algorithms.classical import (
    bracket_coefficients, checkerboard, determinant, goeritz_data, jones_determinant,
    jones_polynomial, kauffman_bracket, mirror_jones, signature, symmetric_inertia, t
)
from algorithms.corpus import corpus_index, ingest_corpus
from algorithms.diagram import (PretzelSpec, connected_sum, mirror, parse_pd, pretzel,
                                torus_knot, unknot)
from algorithms.errors import CeilingExceeded, SplitDiagramError


@pytest.fixture(scope='module')
def corpus():
    return corpus_index(ingest_corpus())


# ==================== İMZA VE DETERMİNANT ====================

def test_trefoil_signature():
    d = torus_knot(2, 3)
    assert signature(d) == -2
    assert signature(mirror(d)) == 2


def test_signature_independent_of_shading():
    d = torus_knot(2, 5)
    for flip in (False, True):
        data = goeritz_data(d, flip)
        positive, negative, _ = symmetric_inertia(data.matrix)
        assert positive - negative - data.mu == -4


def test_checkerboard_crossing_types():
    coloring = checkerboard(torus_knot(2, 3))
    assert len(coloring.crossing_types) == 3
    assert set(coloring.crossing_types) <= {'I', 'II'}
    assert coloring.face_count == 5


def test_small_determinants(corpus):
    assert determinant(corpus['3_1'].diagram()) == 3
    assert determinant(corpus['4_1'].diagram()) == 5
    assert determinant(corpus['5_1'].diagram()) == 5
    assert determinant(unknot()) == 1
    assert signature(unknot()) == 0


def test_signature_additive_under_sum():
    t23 = torus_knot(2, 3)
    granny = connected_sum(t23, t23)
    square = connected_sum(t23, mirror(t23))
    assert signature(granny) == -4
    assert signature(square) == 0
    assert determinant(granny) == 9


@pytest.mark.parametrize('p,q,det,sigma', [(1, 1, 9, 0), (2, 1, 11, -2), (2, 2, 25, 0), (3, 1, 13, -4)])
def test_pretzel_classical(p, q, det, sigma):
    d = pretzel(PretzelSpec(p, q))
    assert determinant(d) == det
    assert signature(d) == sigma


@pytest.mark.parametrize('p,q', [(p, q) for p in range(1, 6) for q in range(1, p + 1)])
def test_pretzel_signature_grid(p, q):
    d = pretzel(PretzelSpec(p, q))
    assert signature(d) == -2 * (p - q)
    assert determinant(d) == 4 * p * q - 2 * p + 6 * q + 1


def test_corpus_matches_table_values(corpus):
    for name, entry in corpus.items():
        d = entry.diagram()
        sign = -1 if entry.annotations['mirror'] else 1
        assert determinant(d) == entry.annotations['det'], name
        assert signature(d) == sign * entry.annotations['sigma'], name


def test_split_diagram_rejected():
    split = parse_pd('PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],U[1]]')
    with pytest.raises(SplitDiagramError):
        determinant(split)


def test_symmetric_inertia_indefinite():
    assert symmetric_inertia([[0, 1], [1, 0]]) == (1, 1, -1)
    assert symmetric_inertia([[2, 1], [1, 2]])[:2] == (2, 0)
    assert symmetric_inertia([[2, 1], [1, 2]])[2] == 3


# ==================== JONES ====================

def test_unknot_bracket():
    assert kauffman_bracket(unknot()) == 1
    assert bracket_coefficients(parse_pd('PD[U[2]]')) == {2: -1, -2: -1}


def test_jones_at_one_is_one(corpus):
    for name in ('3_1', '4_1', '5_2', '6_2'):
        assert sp.simplify(jones_polynomial(corpus[name].diagram()).subs(t, 1)) == 1


def test_mirror_jones():
    d = torus_knot(2, 3)
    assert sp.simplify(jones_polynomial(mirror(d)) - mirror_jones(jones_polynomial(d))) == 0


def test_jones_determinant_matches_goeritz(corpus):
    for name, entry in corpus.items():
        d = entry.diagram()
        if d.is_knot and d.crossing_count <= 10:
            assert jones_determinant(d) == determinant(d), name


def test_bracket_ceiling():
    with pytest.raises(CeilingExceeded) as info:
        bracket_coefficients(torus_knot(2, 5), ceiling=4)
    assert info.value.limit == 4
    assert info.value.size == 5


if __name__ == '__main__':
    print('=== KLASİK DEĞİŞMEZ TESTLERİ ===\n')
    test_trefoil_signature()
    test_signature_additive_under_sum()
    test_mirror_jones()
    print('✓ Klasik değişmez testleri geçti')
