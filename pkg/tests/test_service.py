"""HTTP surface: generation, operations, checks, verification, errors."""

import pytest
from fastapi.testclient import TestClient

import latkit as lk
from latkit.jsonio import lattice_from_json, lattice_to_json
from latkit.service import create_app


@pytest.fixture(scope='module')
def client():
    with TestClient(create_app()) as c:
        yield c


def lat_json(lat):
    return lattice_to_json(lat)


def test_health(client):
    resp = client.get('/health')
    assert resp.status_code == 200
    body = resp.json()
    assert body['status'] == 'ok'
    assert body['version'] == lk.__version__


def test_gen_named_family(client):
    resp = client.post('/gen', json={'kind': 'M3'})
    assert resp.status_code == 200
    lat = lattice_from_json(resp.json()['lattice'])
    assert lk.find_isomorphism(lat, lk.m3()) is not None


def test_gen_parametric(client):
    resp = client.post('/gen', json={'kind': 'Cn', 'n': 4})
    assert lattice_from_json(resp.json()['lattice']).n == 4
    resp = client.post('/gen', json={'kind': 'Bn', 'n': 2})
    assert lattice_from_json(resp.json()['lattice']).n == 4


def test_gen_random_is_seed_deterministic(client):
    a = client.post('/gen', json={'kind': 'random', 'seed': 7, 'size': 6})
    b = client.post('/gen', json={'kind': 'random', 'seed': 7, 'size': 6})
    assert a.json() == b.json()
    lat = lattice_from_json(a.json()['lattice'])
    assert 2 <= lat.n <= 6


def test_gen_unknown_family_is_422(client):
    resp = client.post('/gen', json={'kind': 'Z9'})
    assert resp.status_code == 422
    body = resp.json()
    assert body['error'] == 'UnknownFamily'
    assert 'message' in body


def test_op_tensor(client):
    resp = client.post('/op', json={
        'op': 'tensor',
        'lattices': [lat_json(lk.boolean(2)), lat_json(lk.boolean(2))]})
    assert resp.status_code == 200
    body = resp.json()
    assert lattice_from_json(body['lattice']).n == 16
    assert body['meta']['elements'] == 16
    assert body['meta']['factors'] == [4, 4]


def test_op_box_and_ltp(client):
    payload = [lat_json(lk.m3()), lat_json(lk.chain(2))]
    box = client.post('/op', json={'op': 'box', 'lattices': payload}).json()
    assert lattice_from_json(box['lattice']).n == 5
    ltp = client.post('/op', json={'op': 'ltp', 'lattices': payload}).json()
    lat = lattice_from_json(ltp['lattice'])
    assert lk.find_isomorphism(lat, lk.m3()) is not None
    assert 'cases' in ltp['meta']


def test_op_triples(client):
    resp = client.post('/op', json={'op': 'mL',
                                    'lattices': [lat_json(lk.chain(2))]})
    body = resp.json()
    assert body['meta']['is_lattice'] is True
    lat = lattice_from_json(body['lattice'])
    assert lk.find_isomorphism(lat, lk.m3()) is not None
    resp = client.post('/op', json={'op': 'nL',
                                    'lattices': [lat_json(lk.n5())]})
    assert resp.json()['meta']['elements'] == 42


def test_op_con_and_dual(client):
    resp = client.post('/op', json={'op': 'con',
                                    'lattices': [lat_json(lk.chain(3))]})
    lat = lattice_from_json(resp.json()['lattice'])
    assert lk.find_isomorphism(lat, lk.boolean(2)) is not None
    resp = client.post('/op', json={'op': 'dual',
                                    'lattices': [lat_json(lk.n5())]})
    lat = lattice_from_json(resp.json()['lattice'])
    assert lk.find_isomorphism(lat, lk.n5()) is not None


def test_op_arity_mismatch_is_422(client):
    resp = client.post('/op', json={'op': 'tensor',
                                    'lattices': [lat_json(lk.m3())]})
    assert resp.status_code == 422
    assert resp.json()['error'] == 'MalformedInput'


def test_op_bad_covers_is_422(client):
    resp = client.post('/op', json={
        'op': 'dual',
        'lattices': [{'elements': list('abcd'),
                      'covers': [[0, 2], [0, 3], [1, 2], [1, 3]]}]})
    assert resp.status_code == 422
    body = resp.json()
    assert body['error'] == 'NotALattice'
    assert body.get('witness') is not None


def test_check_classify(client):
    resp = client.post('/check', json={'prop': 'classify',
                                       'lattices': [lat_json(lk.n5())]})
    body = resp.json()
    assert body['verdict'] is True
    assert body['report']['sharply_transferable'] is True
    assert body['report']['amenable'] is True
    resp = client.post('/check', json={'prop': 'amenable',
                                       'lattices': [lat_json(lk.m3())]})
    assert resp.json()['verdict'] is False


def test_check_iso_with_mapping(client):
    resp = client.post('/check', json={
        'prop': 'iso',
        'lattices': [lat_json(lk.boolean(2)),
                     lat_json(lk.product(lk.chain(2), lk.chain(2)))]})
    body = resp.json()
    assert body['verdict'] is True
    assert 'mapping' in body['report']


def test_check_cong_preserving(client):
    c3 = lk.chain(3)
    ok = client.post('/check', json={
        'prop': 'cong-preserving',
        'lattices': [lat_json(c3), lat_json(c3)],
        'mapping': [0, 1, 2]})
    bad = client.post('/check', json={
        'prop': 'cong-preserving',
        'lattices': [lat_json(lk.chain(2)), lat_json(c3)],
        'mapping': [0, 2]})
    assert ok.json()['verdict'] is True
    assert bad.json()['verdict'] is False


def test_check_whitman_and_spike(client):
    resp = client.post('/check', json={'prop': 'whitman',
                                       'lattices': [lat_json(lk.w7())]})
    body = resp.json()
    assert body['verdict'] is False
    assert body['report']['witness'] is not None
    resp = client.post('/check', json={'prop': 'spike',
                                       'lattices': [lat_json(lk.chain(3))]})
    assert resp.json()['verdict'] is False


def test_check_representable_not_distributive_is_422(client):
    resp = client.post('/check', json={'prop': 'representable',
                                       'lattices': [lat_json(lk.m3())]})
    assert resp.status_code == 422
    assert resp.json()['error'] == 'NotDistributive'


def test_verify_endpoint(client):
    resp = client.post('/verify', json={
        'suite': 'box-closure',
        'config': {'seed': 1, 'max_size': 3, 'samples': 1}})
    assert resp.status_code == 200
    tail = resp.json()['records'][-1]
    assert tail['aggregate'] is True
    assert tail['verdict'] is True
    assert tail['failures'] == 0


def test_verify_unknown_suite_is_422(client):
    resp = client.post('/verify', json={'suite': 'bogus'})
    assert resp.status_code == 422


def test_validation_error_shape(client):
    resp = client.post('/op', json={'lattices': []})
    assert resp.status_code == 422
