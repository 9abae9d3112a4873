"""Batch verification suites: determinism, sharding, record shapes."""

import pytest

import latkit as lk
from latkit import RunConfig, SUITE_IDS, run_suite
from latkit.errors import LatkitError
from latkit.jsonio import dumps

SMALL = RunConfig(seed=3, max_size=3, samples=2)


def test_suite_ids_are_stable():
    assert SUITE_IDS == ('glq-iso', 'ltp-iso', 'box-closure', 'm3n5-ltp',
                         'dual-ltp', 'capped-subtensor', 'eps-hom',
                         'diag-cpe', 'perm-pres')


def test_unknown_suite_rejected():
    with pytest.raises(LatkitError):
        run_suite('no-such-suite', SMALL)


@pytest.mark.parametrize('sid', SUITE_IDS)
def test_each_suite_passes_on_small_config(sid):
    records = run_suite(sid, SMALL)
    assert records, sid
    tail = records[-1]
    assert tail['aggregate'] is True
    assert tail['suite'] == sid
    assert tail['failures'] == 0
    assert tail['verdict'] is True
    assert tail['instances'] == len(records) - 1
    assert tail['config'] == SMALL.to_json()
    for rec in records[:-1]:
        assert rec['verdict'] is True
        assert rec['suite'] == sid


def test_records_sorted_and_deterministic():
    first = run_suite('box-closure', SMALL)
    second = run_suite('box-closure', SMALL)
    assert dumps(first) == dumps(second)
    keys = [r['instance'] for r in first[:-1]]
    assert keys == sorted(keys)


def test_worker_count_does_not_change_output():
    lone = run_suite('glq-iso', SMALL, workers=1)
    many = run_suite('glq-iso', SMALL, workers=3)
    assert dumps(lone) == dumps(many)


def test_config_round_trip():
    data = SMALL.to_json()
    assert data == {'seed': 3, 'max_size': 3, 'samples': 2, 'guard': None}
    assert RunConfig(**data) == SMALL


def test_default_config_is_frozen():
    assert RunConfig() == RunConfig(seed=0, max_size=5, samples=20,
                                    guard=None)


def test_records_are_json_ready():
    for rec in run_suite('perm-pres', SMALL):
        dumps(rec)
