"""
Korpus, Ayar ve Yardımcı Yapı Testleri
"""

import json
from pathlib import Path

import pytest

from algorithms.corpus import annotation_mismatches, corpus_index, ingest_corpus, load_watchlist
from algorithms.diagram import parse_pd, torus_knot
from algorithms.errors import AnnotationMismatch, CorpusError
from algorithms.linalg import IntegerEchelon, gf2_rank, rational_rank
from algorithms.report import InvariantReport, build_report
from algorithms.settings import Settings
from algorithms.union_find import UnionFind

TREFOIL = 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]'
FIGURE_EIGHT = 'PD[X[5,8,6,1],X[1,4,2,5],X[7,3,8,2],X[3,7,4,6]]'
ANNOTATED = 'name,pd,components,citations,sigma,det,s,alternating,quasi_alternating,turaev_genus,mirror\n'


# ==================== KORPUS ====================

def test_bundled_corpus():
    entries = ingest_corpus()
    index = corpus_index(entries)
    assert '3_1' in index and '9_49' in index
    assert all(e.citations for e in entries)
    names = [e.name for e in entries]
    assert names.index('3_1') < names.index('3_1:kt') < names.index('4_1')
    assert names.index('8_19:braid') < names.index('9_1')


def test_variant_names():
    entry = corpus_index(ingest_corpus())['6_2:kt']
    assert entry.base_name == '6_2'
    assert entry.variant == 'kt'
    assert entry.diagram().crossing_count == 6


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return path


def test_duplicate_name_rejected(tmp_path):
    path = write(tmp_path, 'k.csv', 'name,pd,components,citations\n'
                 '3_1,"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",1,a\n'
                 '3_1,"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",1,a\n')
    with pytest.raises(CorpusError) as info:
        ingest_corpus(path)
    assert info.value.row == 3


def test_bad_pd_row_reports_line(tmp_path):
    path = write(tmp_path, 'k.csv', '# yorum\nname,pd,components,citations\n'
                 'bozuk,"PD[X[1,2,3]]",1,a\n')
    with pytest.raises(CorpusError) as info:
        ingest_corpus(path)
    assert info.value.row == 3


def test_component_mismatch(tmp_path):
    path = write(tmp_path, 'k.csv', 'name,pd,components,citations\n'
                 '3_1,"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",2,a\n')
    with pytest.raises(CorpusError):
        ingest_corpus(path)


def test_empty_and_json_corpus(tmp_path):
    assert ingest_corpus(write(tmp_path, 'bos.csv', '# yalnızca yorum\n')) == []
    data = {'knots': [{'name': '3_1', 'pd': 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]',
                       'citations': ['elle girildi'], 'annotations': {'chirality': 'left'}}]}
    entries = ingest_corpus(write(tmp_path, 'k.json', json.dumps(data)))
    assert entries[0].annotations == {'chirality': 'left'}
    with pytest.raises(CorpusError):
        ingest_corpus(tmp_path / 'yok.csv')


def test_watchlist():
    entries = load_watchlist()
    assert len(entries) == 12
    assert all(e.expected_genus == 2 and e.citation for e in entries)
    assert all('KnotInfo' in e.source for e in entries)
    first = entries[0]
    assert first.name == '11n95'
    assert first.annotations == {'sigma': -4, 'det': 33, 's': 4}
    assert first.diagram().crossing_count == 11
    assert all(e.diagram().crossing_count == 12 for e in entries[1:])


def test_watchlist_requires_diagram(tmp_path):
    data = {'citation': 'elle girildi', 'knots': [{'name': 'K', 'pd': None}]}
    with pytest.raises(CorpusError):
        load_watchlist(write(tmp_path, 'w.json', json.dumps(data)))
    data['knots'] = [{'name': 'K', 'pd': TREFOIL, 'annotations': {'det': 7}}]
    with pytest.raises(AnnotationMismatch):
        load_watchlist(write(tmp_path, 'w.json', json.dumps(data)))


# ==================== YAZILI DEĞERLER ====================

def test_bundled_annotations():
    index = corpus_index(ingest_corpus())
    assert index['3_1'].annotations == {'sigma': -2, 'det': 3, 's': 2, 'alternating': True,
                                        'quasi_alternating': True, 'turaev_genus': 0, 'mirror': True}
    assert index['8_19'].annotations['quasi_alternating'] is False
    assert index['8_19'].annotations['turaev_genus'] == 1
    assert index['8_19:braid'].annotations['s'] == 6


def test_annotated_row_accepted(tmp_path):
    path = write(tmp_path, 'k.csv', ANNOTATED + f'3_1,"{TREFOIL}",1,a,-2,3,2,Y,Y,0,1\n')
    entry = ingest_corpus(path)[0]
    assert entry.annotations['mirror'] is True
    assert annotation_mismatches(entry.annotations, entry.diagram(), with_s=True) == {}


@pytest.mark.parametrize('values,key', [
    ('-2,5,2,Y,Y,0,1', 'det'),
    ('-2,3,2,Y,Y,0,0', 'sigma'),
    ('-2,3,2,N,Y,0,1', 'alternating'),
    ('-2,3,2,Y,N,0,1', 'quasi_alternating'),
    ('-2,3,2,Y,Y,1,1', 'turaev_genus'),
])
def test_corrupted_annotation_rejected(tmp_path, values, key):
    path = write(tmp_path, 'k.csv', ANNOTATED + f'4_1,"{FIGURE_EIGHT}",1,a,0,5,0,Y,Y,0,0\n'
                 f'3_1,"{TREFOIL}",1,a,{values}\n')
    with pytest.raises(AnnotationMismatch) as info:
        ingest_corpus(path)
    assert info.value.row == 3
    assert info.value.name == '3_1'
    assert set(info.value.mismatches) == {key}
    assert len(ingest_corpus(path, verify=False)) == 2


def test_wrong_s_caught_only_with_s():
    d = parse_pd(TREFOIL)
    annotations = {'s': -2, 'mirror': True}
    assert annotation_mismatches(annotations, d) == {}
    assert annotation_mismatches(annotations, d, with_s=True) == {'s': (2, -2)}


def test_unreadable_annotation(tmp_path):
    path = write(tmp_path, 'k.csv', ANNOTATED + f'3_1,"{TREFOIL}",1,a,iki,3,2,Y,Y,0,1\n')
    with pytest.raises(CorpusError) as info:
        ingest_corpus(path)
    assert not isinstance(info.value, AnnotationMismatch)
    path = write(tmp_path, 'k.csv', ANNOTATED + f'3_1,"{TREFOIL}",1,a,-2,3,2,belki,Y,0,1\n')
    with pytest.raises(CorpusError):
        ingest_corpus(path)


# ==================== AYARLAR ====================

def test_settings_from_env():
    s = Settings.from_env({'KNOTLAB_KH_CEILING': '10', 'KNOTLAB_FIELD': 'gf2', 'KNOTLAB_CORPUS': '/tmp/x.csv'})
    assert s.kh_ceiling == 10
    assert s.field == 'gf2'
    assert s.corpus_path == Path('/tmp/x.csv')
    assert s.override(kh_ceiling=None).kh_ceiling == 10
    with pytest.raises(ValueError):
        Settings.from_env({'KNOTLAB_FIELD': 'z3'})
    with pytest.raises(ValueError):
        Settings().override(qa_budget=0)
    assert Settings.from_env({'KNOTLAB_WORKERS': '4'}).workers == 4
    with pytest.raises(ValueError):
        Settings().override(workers=0)


# ==================== YARDIMCI YAPILAR ====================

def test_union_find():
    uf = UnionFind([1, 2, 3, 4])
    assert uf.union(1, 2)
    assert not uf.union(2, 1)
    assert uf.connected(1, 2)
    assert not uf.connected(1, 3)
    assert uf.count() == 3


def test_ranks():
    assert gf2_rank([0b11, 0b01, 0b10]) == 2
    assert rational_rank([{0: 2, 1: 4}, {0: 1, 1: 2}, {1: 3}]) == 2
    echelon = IntegerEchelon()
    echelon.reduce({'a': 2, 'b': 1}, store=True)
    assert echelon.rank == 1
    assert echelon.reduce({'a': 4, 'b': 2}) == {}


# ==================== RAPOR ====================

def test_report_round_trip():
    report = build_report(torus_knot(2, 3), 'T(2,3)')
    assert report.consistent()
    assert report.violations == 0
    assert report.lower_bound['bound'] == '0'
    assert InvariantReport.from_dict(report.to_dict()) == report
