"""
API Testleri
Flask test istemcisi ile JSON uç noktaları; bellek içi SQLite kullanılır
"""

import os

os.environ['KNOTLAB_SQLALCHEMY_DATABASE_URI'] = 'sqlite://'

import pytest

from algorithms.diagram import torus_knot
from app import InvariantRecord, app, db

TREFOIL = 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]'


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.app_context():
        db.drop_all()
        db.create_all()
    with app.test_client() as c:
        yield c


# ==================== KORPUS ====================

def test_list_knots(client):
    r = client.get('/api/knots')
    assert r.status_code == 200
    names = r.get_json()
    assert '3_1' in names
    assert names.index('3_1') < names.index('4_1')


def test_get_knot(client):
    r = client.get('/api/knots/4_1')
    assert r.status_code == 200
    data = r.get_json()
    assert data['entry']['name'] == '4_1'
    assert data['report']['det'] == 5
    assert data['report']['turaev_genus'] == 0


def test_unknown_knot(client):
    assert client.get('/api/knots/yok').status_code == 404
    assert client.get('/api/knots/3_1?field=z2').status_code == 400


# ==================== HESAPLAMA ====================

def test_invariants_are_cached(client):
    body = {'pd': TREFOIL, 'name': 'sol-yonlu'}
    r = client.post('/api/invariants', json=body)
    assert r.status_code == 200
    data = r.get_json()
    assert data['det'] == 3
    assert data['sigma'] == 2
    assert data['s'] == -2
    r = client.post('/api/invariants', json=body)
    assert r.status_code == 200
    with app.app_context():
        assert InvariantRecord.query.count() == 1
        record = InvariantRecord.query.first()
        assert record.to_dict()['report']['name'] == 'sol-yonlu'


def test_invariants_errors(client):
    assert client.post('/api/invariants', json={}).status_code == 400
    assert client.post('/api/invariants', json={'pd': 'PD[X[1,2,3]]'}).status_code == 400
    assert client.post('/api/invariants', json={'pd': TREFOIL, 'field': 'z'}).status_code == 400
    assert client.post('/api/invariants', json={'name': 'yok'}).status_code == 404


def test_reduce_endpoint(client):
    r = client.post('/api/reduce', json={'name': '6_2'})
    assert r.status_code == 200
    data = r.get_json()
    assert all(data['invariants'].values())
    r = client.post('/api/reduce', json={'name': '6_2', 'tree': 'dfs'})
    assert r.status_code == 400


def test_qa_endpoint(client):
    r = client.post('/api/qa', json={'pd': str(torus_knot(2, 3))})
    assert r.status_code == 200
    data = r.get_json()
    assert data['status'] == 'certified'
    assert data['verified'] is True
    r = client.post('/api/qa', json={'pd': TREFOIL, 'budget': 0})
    assert r.status_code == 400


def test_pretzel_endpoint(client):
    r = client.get('/api/pretzel/1/1')
    assert r.status_code == 200
    data = r.get_json()
    assert data['name'] == 'K(1,1)'
    assert data['turaev_genus'] == 1
    assert data['det'] == 9
    assert client.get('/api/pretzel/1/2').status_code == 400


if __name__ == '__main__':
    print('=== API TESTLERİ ===\n')
    print('pytest test_api.py ile çalıştırın')
