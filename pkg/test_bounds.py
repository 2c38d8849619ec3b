"""
Sınır Testleri
Enjekte değerler, yayılan ağaç indirgemesi, diyagram sınırları,
Turaev cinsi alt sınırı ve pretzel toplamı sandviçi
"""

import json
from fractions import Fraction

import pytest

import algorithms.batch
import algorithms.bounds
import algorithms.report
from algorithms.batch import GenusTwoJob, SweepJob, genus_two_row, sweep_row
from algorithms.bounds import (
    Interval, InvariantSource, asymptotic_genus_check, diagram_bounds, diagram_bounds_check,
    distance, injected_source, knot_bounds_check, load_injected, neg_sigma_source, parse_value,
    pretzel_sum_sandwich, reduce_negative, reduce_positive, s_source, slice_torus_source,
    turaev_lower_bound
)
from algorithms.classical import signature
from algorithms.corpus import corpus_index, ingest_corpus, load_watchlist
from algorithms.diagram import PretzelSpec, mirror, parse_pd, pretzel, torus_knot
from algorithms.errors import CorpusError, DiagramError, KnotError, MissingInvariant
from algorithms.khovanov import s_invariant
from algorithms.report import build_report
from algorithms.turaev import is_connected, s_a, turaev_genus_diagram

KNOTS = [e.name for e in ingest_corpus() if e.components == 1]
PRETZELS = [(p, q) for p in range(1, 6) for q in range(1, p + 1)]
SIX_TWO = 'PD[X[7,12,8,1],X[11,6,12,7],X[5,10,6,11],X[1,4,2,5],X[9,3,10,2],X[3,9,4,8]]'


@pytest.fixture(scope='module')
def corpus():
    return corpus_index(ingest_corpus())


@pytest.fixture(scope='module')
def records():
    return load_injected()


# ==================== DEĞERLER VE KAYNAKLAR ====================

def test_interval_values():
    x = parse_value(['-2', '-3/2'])
    assert x == Interval(Fraction(-2), Fraction(-3, 2))
    assert -x == Interval(Fraction(3, 2), Fraction(2))
    assert parse_value('3/2') == Fraction(3, 2)
    assert distance(Fraction(0), x) == Fraction(3, 2)
    assert distance(Fraction(-2), x) == 0
    with pytest.raises(KnotError):
        Interval(Fraction(1), Fraction(0))


def test_source_modes():
    assert s_source().mode == 'computed'
    table = InvariantSource('nu', table={'K': Fraction(1)}, citation='elle girildi')
    assert table.mode == 'injected'
    assert table.evaluate(name='K') == 1
    assert table.negated().evaluate(name='K') == -1
    with pytest.raises(MissingInvariant):
        table.evaluate(name='L')
    with pytest.raises(KnotError):
        InvariantSource('nu', table={'K': Fraction(1)})


def test_injected_records_carry_citations(records):
    assert records
    assert all(r['citation'] for r in records)
    source = injected_source('s_n_normalized', 3, records)
    assert source.evaluate(name='K(1,1)') == Interval(Fraction(-2), Fraction(-1))
    with pytest.raises(MissingInvariant):
        injected_source('s_n_normalized', 7, records)


def test_injected_without_citation_rejected(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps({'records': [{'knot': 'K(1,1)', 'invariant': 'x', 'value': '1'}]}))
    with pytest.raises(CorpusError):
        load_injected(path)


def test_slice_torus_shift():
    source = slice_torus_source('2tau', {'T': Fraction(1)}, 'elle girildi')
    assert source.evaluate(name='T') == 3


# ==================== İNDİRGEME ====================

def test_reduce_positive_trefoil():
    d = torus_knot(2, 3)
    result = reduce_positive(d)
    assert result.reduced.n_plus == 0
    assert is_connected(result.reduced)
    assert all(result.invariants().values())
    assert s_a(result.reduced) == s_a(d) - len(result.tree)


def test_reduce_negative_of_positive_diagram_is_identity():
    d = torus_knot(2, 3)
    result = reduce_negative(d)
    assert result.reduced == d
    assert result.tree == []


def test_reduce_positive_of_negative_diagram_is_identity():
    d = mirror(torus_knot(2, 3))
    assert reduce_positive(d).reduced == d


@pytest.mark.parametrize('name', ['6_2', '7_6'])
def test_reduce_mixed_corpus_diagrams(corpus, name):
    d = corpus[name].diagram()
    for tree, seed in (('bfs', None), ('random', 1)):
        pos = reduce_positive(d, tree, seed)
        assert all(pos.invariants().values()), (name, tree, seed)
        neg = reduce_negative(d, tree, seed)
        assert neg.reduced.n_minus == 0
        assert is_connected(neg.reduced)


def test_reduce_pretzel():
    d = pretzel(PretzelSpec(2, 1))
    result = reduce_positive(d)
    assert result.reduced.n_plus == 0
    assert result.to_dict()['invariants'] == {'negative': True, 'connected': True, 'state_count': True}


def test_reduce_unknown_tree():
    with pytest.raises(DiagramError):
        reduce_positive(torus_knot(2, 3), tree='dfs')


def test_reduce_every_corpus_diagram(corpus):
    for name in KNOTS:
        d = corpus[name].diagram()
        for fn in (reduce_positive, reduce_negative):
            result = fn(d)
            assert all(result.invariants().values()), (name, fn.__name__, result.invariants())


def test_reduce_negative_keeps_b_state_count(corpus):
    d = corpus['6_2'].diagram()
    result = reduce_negative(d)
    assert result.direction == 'negative'
    assert set(result.invariants()) == {'positive', 'connected', 'state_count'}
    assert result.to_dict()['s_b']['reduced'] == result.to_dict()['s_b']['original'] - len(result.tree)


def test_six_two_reduction_fixture():
    d = parse_pd(SIX_TWO)
    assert d.n_plus == 2
    result = reduce_positive(d)
    assert result.gamma_vertices == 2
    assert len(result.gamma_edges) == 2
    assert len(result.tree) == 1
    assert result.band_count == 1
    assert result.connected.crossing_count == 5
    assert result.reduced.crossing_count == 4
    assert all(result.invariants().values())


# ==================== SINIRLAR ====================

def test_trefoil_bounds_are_tight():
    d = torus_knot(2, 3)
    assert diagram_bounds(d) == (2, 2)
    check = diagram_bounds_check(d, s_source())
    assert check.passed
    assert check.margin == (0, 0)


def test_mixed_diagram_rejected_by_signed_check(corpus):
    with pytest.raises(DiagramError):
        diagram_bounds_check(corpus['4_1'].diagram(), s_source())


@pytest.mark.parametrize('name', ['3_1', '4_1', '5_2', '6_2', '7_4'])
def test_knot_bounds_hold(corpus, name):
    d = corpus[name].diagram()
    assert knot_bounds_check(d, s_source()).passed
    assert knot_bounds_check(d, neg_sigma_source()).passed


def test_neg_sigma_bounds_every_corpus_knot(corpus):
    source = neg_sigma_source()
    for name in KNOTS:
        check = knot_bounds_check(corpus[name].diagram(), source)
        assert check.passed, (name, check.to_dict())


@pytest.mark.slow
@pytest.mark.parametrize('name', KNOTS)
def test_s_bounds_and_lower_bound_every_corpus_knot(corpus, name):
    d = corpus[name].diagram()
    s = s_invariant(d).s
    sigma = signature(d)
    check = knot_bounds_check(d, InvariantSource('s', compute=lambda _: Fraction(s)))
    assert check.passed, check.to_dict()
    report = turaev_lower_bound({'s': Fraction(s), 'neg_sigma': Fraction(-sigma)}, [d])
    assert report.passed
    assert report.bound <= turaev_genus_diagram(d)


def test_bound_checks_use_full_s(monkeypatch):
    calls = []

    def spy(d, truncate=False, ceiling=None):
        calls.append(truncate)
        return s_invariant(d, truncate=truncate, ceiling=ceiling)

    for module in (algorithms.bounds, algorithms.report, algorithms.batch):
        monkeypatch.setattr(module, 's_invariant', spy)
    d = torus_knot(2, 3)
    assert knot_bounds_check(d, s_source()).passed
    assert diagram_bounds_check(d, s_source()).passed
    assert pretzel_sum_sandwich(1, 1, 1, compute_s=True).s_value == 0
    assert build_report(d).bounds['s']['passed']
    assert sweep_row(SweepJob('T(2,3)', str(d)))['violations'] == 0
    assert len(calls) == 5
    assert not any(calls)


def test_lower_bound_report():
    d = pretzel(PretzelSpec(2, 1))
    report = turaev_lower_bound({'s': Fraction(2), 'neg_sigma': Fraction(2)}, [d])
    assert report.bound == 0
    assert report.diagram_genus == 1
    assert report.passed
    report = turaev_lower_bound({'a': Fraction(0), 'b': Fraction(3)})
    assert report.integer_bound == 2
    with pytest.raises(KnotError):
        turaev_lower_bound({'s': Fraction(0)})


def test_injected_bound_against_pretzel(records):
    d = pretzel(PretzelSpec(1, 1))
    check = knot_bounds_check(d, injected_source('s_n_normalized', 5, records), 'K(1,1)')
    assert check.passed


# ==================== SANDVİÇ ====================

@pytest.mark.parametrize('g', [1, 2, 3])
def test_pretzel_sum_sandwich_pins_genus(records, g):
    report = pretzel_sum_sandwich(g, 1, 1, records=records)
    assert report.upper == g
    assert report.lower == g
    assert report.pinned
    assert report.classical_bound == 0


def test_sandwich_lower_bounds_increase_with_n(records):
    report = pretzel_sum_sandwich(1, 1, 1, records=records)
    bounds = list(report.lower_by_n.values())
    assert bounds == sorted(bounds)
    assert report.lower_by_n[100] == Fraction(98, 99)


def test_sandwich_with_computed_s(records):
    report = pretzel_sum_sandwich(1, 1, 1, compute_s=True, records=records)
    assert report.s_method == 'lee'
    assert report.s_value == 0


@pytest.mark.parametrize('p,q', PRETZELS)
def test_sandwich_branch_values(records, p, q):
    report = pretzel_sum_sandwich(1, p, q, records=records)
    assert report.s_value == 2 * (p - q)
    assert report.lower_by_n == {n: 1 - Fraction(1, n - 1) for n in (2, 3, 5, 10, 100)}
    assert report.classical_bound == 0
    assert report.upper == report.limit_bound == 1
    assert report.pinned


@pytest.mark.parametrize('p,q', PRETZELS)
def test_injected_limit_meets_diagram_genus(records, p, q):
    spec = PretzelSpec(p, q)
    limsup = injected_source('limsup_s_n_over_n', records=records).evaluate(name=spec.name)
    report = asymptotic_genus_check(spec.name, 2 * (p - q), limsup, [pretzel(spec)])
    assert report.status == 'equality'


# ==================== ASİMPTOTİK ====================

def test_asymptotic_equality():
    d = pretzel(PretzelSpec(1, 1))
    report = asymptotic_genus_check('K(1,1)', 0, Fraction(2), [d])
    assert report.status == 'equality'


def test_asymptotic_statuses():
    d = pretzel(PretzelSpec(1, 1))
    assert asymptotic_genus_check('K', 0, Fraction(1), [d]).status == 'consistent'
    assert asymptotic_genus_check('K', 2, Fraction(2), [d]).status == 'violation'
    assert asymptotic_genus_check('K', 0, None, [d]).status == 'inconclusive'
    assert asymptotic_genus_check('K', 0, Interval(Fraction(1), Fraction(2)), [d]).status == 'inconclusive'
    assert turaev_genus_diagram(d) == 1


# ==================== TURAEV CİNSİ İKİ ====================

def _watch(name):
    return next(e for e in load_watchlist() if e.name == name)


def test_genus_two_row_statuses():
    e = _watch('12n253')
    job = GenusTwoJob(e.name, e.pd, 2, e.citation, e.source, e.annotations)
    row = genus_two_row(job)
    assert (row['diagram_genus'], row['status'], row['s_method']) == (2, 'realized', 'injected')
    assert row['violations'] == 0
    too_high = genus_two_row(GenusTwoJob(e.name, e.pd, 3, e.citation, e.source, e.annotations))
    assert too_high['status'] == 'below expected'
    assert too_high['violations'] == 1
    assert genus_two_row(GenusTwoJob(e.name, e.pd, 1, e.citation, e.source, {}))['status'] == 'upper bound'


@pytest.mark.slow
def test_genus_two_row_computed_s():
    e = _watch('12n253')
    row = genus_two_row(GenusTwoJob(e.name, e.pd, 2, e.citation, e.source, e.annotations, compute_s=True))
    assert (row['s'], row['s_method']) == (-2, 'computed')
    assert 'annotation_mismatch' not in row
    assert row['violations'] == 0


if __name__ == '__main__':
    print('=== SINIR TESTLERİ ===\n')
    test_trefoil_bounds_are_tight()
    test_reduce_positive_trefoil()
    test_lower_bound_report()
    print('✓ Sınır testleri geçti')
