"""Lattice catalog and seeded random generation."""

import itertools

import numpy as np
import pytest

import latkit as lk
from latkit.order import is_lattice


def enumerate_lattices_brute(n):
    '''All lattices on n elements up to isomorphism, the slow way.

    Every finite poset admits a labeling compatible with some linear
    order, so scanning all upper-triangular relations and deduplicating
    by isomorphism covers everything.
    '''
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    for mask in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                leq[i, j] = True
        if not ((leq @ leq) <= leq).all():
            continue  # not transitive
        poset = lk.FinitePoset(leq, validate=False)
        ok, _ = is_lattice(poset)
        if not ok:
            continue
        lat = lk.FiniteLattice(leq, validate=False)
        if all(lk.find_isomorphism(lat, seen) is None for seen in found):
            found.append(lat)
    return found


@pytest.mark.parametrize('n,count', [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5)])
def test_counts_against_brute_force(n, count):
    assert len(enumerate_lattices_brute(n)) == count
    per_size = [lat for lat in lk.all_lattices(n) if lat.n == n]
    assert len(per_size) == count


def test_count_six_elements(catalog6):
    assert sum(1 for lat in catalog6 if lat.n == 6) == 15
    assert len(catalog6) == 1 + 1 + 1 + 2 + 5 + 15


def test_catalog_members_are_valid_and_distinct(catalog6):
    lats = list(catalog6)
    for lat in lats:
        lk.FiniteLattice(lat.leq)  # re-validate from scratch
    for a, b in itertools.combinations(lats, 2):
        assert lk.find_isomorphism(a, b) is None


def test_catalog_ordered_by_size(catalog6):
    sizes = [lat.n for lat in catalog6]
    assert sizes == sorted(sizes)


def test_random_lattice_deterministic():
    a = lk.random_lattice(42, 6)
    b = lk.random_lattice(42, 6)
    assert a.n == b.n and (a.leq == b.leq).all()
    assert 2 <= a.n <= 6
    lk.FiniteLattice(a.leq)  # closure-system output is always a lattice


def test_random_lattice_seed_sensitivity():
    shapes = {lk.random_lattice(seed, 7).leq.tobytes() for seed in range(12)}
    assert len(shapes) > 1


def test_random_lattices_batch():
    batch = lk.random_lattices(5, 10, 6)
    again = lk.random_lattices(5, 10, 6)
    assert len(batch) == 10
    for x, y in zip(batch, again):
        assert (x.leq == y.leq).all()


def test_random_generator_leaves_chains():
    'Some sampled lattice should be non-distributive at size 7.'
    lats = lk.random_lattices(0, 40, 7)
    assert any(not lat.is_distributive for lat in lats)
