"""Bi-ideal tensor products: generators, closure, caps, two routes."""

import itertools

import pytest

import latkit as lk
from latkit import MixedPreconditionViolated, SizeLimitExceeded
from latkit.tensor import BiIdealSpace, bi_ideal_elements, count_bi_ideals


def brute_bi_ideal_masks(a, b):
    'Every subset of A x B satisfying the three defining conditions.'
    na, nb = a.n, b.n
    aj, bj = a.join_table, b.join_table
    out = set()
    for mask in range(1 << (na * nb)):
        s = {(x, y) for x in range(na) for y in range(nb)
             if mask >> (x * nb + y) & 1}
        axes = all((x, b.zero) in s for x in range(na)) and \
            all((a.zero, y) in s for y in range(nb))
        if not axes:
            continue
        hereditary = all((u, v) in s
                         for x, y in s
                         for u in range(na) if a.leq[u, x]
                         for v in range(nb) if b.leq[v, y])
        if not hereditary:
            continue
        lateral = all(
            ((x, int(bj[y, v])) in s or x != u) and
            ((int(aj[x, u]), y) in s or y != v)
            for x, y in s for u, v in s)
        if lateral:
            out.add(mask)
    return out


def test_pure_tensor_extremes():
    sp = BiIdealSpace(lk.chain(3), lk.chain(3))
    full = sp.pure(2, 2)
    assert len(sp.pairs_of(full)) == 9  # 1 (x) 1 covers everything
    assert sp.pure(0, 1) == sp.bottom
    assert sp.pure(1, 0) == sp.bottom


def test_bottom_is_the_two_axes():
    a, b = lk.m3(), lk.chain(2)
    sp = BiIdealSpace(a, b)
    axes = {(x, b.zero) for x in range(a.n)} | {(a.zero, y) for y in range(b.n)}
    assert set(sp.pairs_of(sp.bottom)) == axes


def test_mixed_tensor_union_is_closed():
    sp = BiIdealSpace(lk.chain(3), lk.chain(3))
    mixed = sp.mixed(1, 2, 2, 1)
    assert mixed == sp.join(sp.pure(1, 2), sp.pure(2, 1))
    assert set(sp.pairs_of(mixed)) == set(sp.pairs_of(sp.pure(1, 2))) | \
        set(sp.pairs_of(sp.pure(2, 1)))


def test_mixed_precondition():
    sp = BiIdealSpace(lk.chain(3), lk.chain(3))
    with pytest.raises(MixedPreconditionViolated):
        sp.mixed(2, 1, 1, 2)  # a0 above a1


def test_closure_of_empty_seed_is_bottom():
    sp = BiIdealSpace(lk.n5(), lk.chain(2))
    assert sp.from_pairs([]) == sp.bottom


def test_singleton_seed_gives_pure_tensor():
    a, b = lk.m3(), lk.chain(2)
    sp = BiIdealSpace(a, b)
    for x in range(a.n):
        for y in range(b.n):
            assert sp.from_pairs([(x, y)]) == sp.pure(x, y)


def test_lateral_join_fills_the_top():
    'Seeding two incomparable atoms at the same second coordinate.'
    a, b = lk.m3(), lk.chain(2)
    sp = BiIdealSpace(a, b)
    at1, at2 = a.atoms()[:2]
    assert sp.from_pairs([(at1, 1), (at2, 1)]) == sp.pure(a.one, b.one)


@pytest.mark.parametrize('fa,fb', [
    (lambda: lk.chain(2), lambda: lk.chain(2)),
    (lambda: lk.chain(2), lambda: lk.chain(3)),
    (lambda: lk.chain(3), lambda: lk.chain(3)),
    (lambda: lk.m3(), lambda: lk.chain(2)),
])
def test_enumeration_matches_powerset_scan(fa, fb):
    a, b = fa(), fb()
    sp, elems = bi_ideal_elements(a, b)
    assert {sp.mask_of(t) for t in elems} == brute_bi_ideal_masks(a, b)


def test_every_element_is_a_bi_ideal():
    a, b = lk.m3(), lk.chain(3)
    t = lk.tensor_product(a, b)
    sp = t.space
    bottom_pairs = set(sp.pairs_of(sp.bottom))
    for i in range(t.lattice.n):
        pairs = set(sp.pairs_of(t.elements[i]))
        assert bottom_pairs <= pairs
        for x, y in pairs:
            for u in range(a.n):
                for v in range(b.n):
                    if a.leq[u, x] and b.leq[v, y]:
                        assert (u, v) in pairs
        for (x, y), (u, v) in itertools.product(pairs, repeat=2):
            if x == u:
                assert (x, int(b.join_table[y, v])) in pairs
            if y == v:
                assert (int(a.join_table[x, u]), y) in pairs


def test_closure_is_a_closure_operator():
    a, b = lk.n5(), lk.chain(3)
    sp = BiIdealSpace(a, b)
    all_pairs = [(x, y) for x in range(a.n) for y in range(b.n)]
    import random
    rng = random.Random(9)
    for _ in range(25):
        seed1 = rng.sample(all_pairs, rng.randint(0, 6))
        t1 = sp.from_pairs(seed1)
        assert all(sp.leq(sp.from_pairs([p]), t1) for p in seed1)  # extensive
        assert sp.from_pairs(sp.pairs_of(t1)) == t1                # idempotent
        t2 = sp.from_pairs(seed1 + [rng.choice(all_pairs)])
        assert sp.leq(t1, t2)                                      # monotone


def test_unit_factor(catalog4):
    b1 = lk.boolean(1)
    for lat in catalog4:
        t = lk.tensor_product(lat, b1)
        assert lk.find_isomorphism(t.lattice, lat) is not None


def test_boolean_square():
    t = lk.tensor_product(lk.boolean(2), lk.boolean(2))
    assert t.lattice.n == 16
    assert lk.find_isomorphism(t.lattice, lk.power(lk.boolean(2), 2)) is not None


def test_tensor_is_symmetric(catalog4):
    for a, b in itertools.combinations(catalog4, 2):
        ab = lk.tensor_product(a, b).lattice
        ba = lk.tensor_product(b, a).lattice
        assert lk.find_isomorphism(ab, ba) is not None


def test_caps_of_pure_and_bottom():
    sp = BiIdealSpace(lk.chain(3), lk.chain(3))
    assert set(sp.caps(sp.bottom)) == {(2, 0), (0, 2)}
    assert set(sp.caps(sp.pure(1, 1))) == {(1, 1), (2, 0), (0, 2)}
    assert set(sp.caps(sp.pure(2, 2))) == {(2, 2)}


def test_caps_of_mixed_tensor():
    sp = BiIdealSpace(lk.chain(3), lk.chain(3))
    assert set(sp.caps(sp.mixed(1, 2, 2, 1))) == {(1, 2), (2, 1)}


def test_union_of_caps_recovers_element():
    t = lk.tensor_product(lk.n5(), lk.chain(3))
    sp = t.space
    for i in range(t.lattice.n):
        elem = t.elements[i]
        rebuilt = sp.from_pairs(sp.caps(elem))
        assert rebuilt == elem
        # and without closure: the plain union of pure down-sets
        union = set()
        for x, y in sp.caps(elem):
            union |= set(sp.pairs_of(sp.pure(x, y)))
        assert union == set(sp.pairs_of(elem))


def test_hom_route_matches_closure_route():
    for fa, fb in ((lk.chain(2), lk.chain(2)), (lk.m3(), lk.chain(2)),
                   (lk.n5(), lk.chain(3))):
        assert lk.hom_tensor(fa, fb).iso_check()


def test_hom_tensor_c2_c2_shape():
    h = lk.hom_tensor(lk.chain(2), lk.chain(2))
    assert len(h.maps) == 2
    assert lk.find_isomorphism(
        lk.tensor_product(lk.chain(2), lk.chain(2)).lattice,
        lk.chain(2)) is not None


def test_hom_maps_turn_joins_into_intersections():
    h = lk.hom_tensor(lk.m3(), lk.boolean(2))
    a = h.a
    pos = {x: k for k, x in enumerate(h.carrier)}
    for phi in h.maps:
        for x in h.carrier:
            for y in h.carrier:
                j = int(a.join_table[x, y])
                assert phi[pos[j]] == phi[pos[x]] & phi[pos[y]]
                if a.leq[x, y]:  # antitone as a consequence
                    assert phi[pos[y]] & phi[pos[x]] == phi[pos[y]]


def test_count_bi_ideals():
    assert count_bi_ideals(lk.chain(2), lk.chain(2), 100) == 2
    assert count_bi_ideals(lk.boolean(2), lk.boolean(2), 100) == 16
    assert count_bi_ideals(lk.boolean(2), lk.boolean(2), 5) is None


def test_dimension_guard():
    with pytest.raises(SizeLimitExceeded):
        lk.tensor_product(lk.chain(5), lk.chain(5))
    # elements correspond to order-reversing maps from the nonzero part
    # of one chain into the other: C(8,4) of them
    assert lk.tensor_product(lk.chain(5), lk.chain(5), guard=25).lattice.n == 70


def test_balanced_triples_match_tensor():
    from latkit.boxprod import triples
    t = lk.tensor_product(lk.m3(), lk.chain(3))
    tl = triples(lk.chain(3), 'm3bracket')
    assert tl.is_lattice
    assert lk.find_isomorphism(t.lattice, tl.lattice) is not None
