"""Theorem-level gate: every check here covers its full stated range.

Each test prints one [PASS]/[FAIL] line for its criterion; witnesses
for any failing instance ride along in the assertion message.
"""

import itertools

import numpy as np
import pytest

import latkit as lk
from latkit.boxprod import BoxdotElement, box_closure, box_product
from latkit.congruence import con_lattice
from latkit.freelat import free_lattice_fragment, whitman_leq
from latkit.order import FinitePoset
from latkit.tensor import BiIdealSpace


def verdict_line(tag, failures):
    status = 'FAIL' if failures else 'PASS'
    print(f'[{status}] {tag}')
    assert not failures, f'{tag}: first failures {failures[:5]}'


def isomorphic(a, b):
    return lk.find_isomorphism(a, b) is not None


# --- 1: congruences of a tensor product are the tensor of congruences ------

def test_c01_glq_isomorphism_exhaustive_and_random(catalog5):
    failures = []
    for a in catalog5:
        for b in catalog5:
            rep = lk.glq_isomorphism_check(a, b)
            if not rep.verdict:
                failures.append((a.name, b.name, rep.details))
    batch = lk.random_lattices(0, 200, 7)
    for i, (a, b) in enumerate(zip(batch[0::2], batch[1::2])):
        rep = lk.glq_isomorphism_check(a, b)
        if not rep.verdict:
            failures.append(('random', i, a.n, b.n, rep.details))
    verdict_line('c01 tensor-congruence isomorphism, '
                 '100 catalog + 100 random pairs', failures)


# --- 2: Boolean factors: unit law and power law -----------------------------

def test_c02_boolean_factor_laws(catalog6):
    failures = []
    for lat in catalog6:
        t = lk.tensor_product(lat, lk.boolean(1), guard=lat.n * 2)
        if not isomorphic(t.lattice, lat):
            failures.append((lat.name, 'unit'))
        for n in (2, 3):
            t = lk.tensor_product(lat, lk.boolean(n), guard=lat.n * 2 ** n)
            if not isomorphic(t.lattice, lk.power(lat, n)):
                failures.append((lat.name, f'power {n}'))
    verdict_line('c02 tensor with B1/B2/B3 gives L, L^2, L^3', failures)


# --- 3: bracket-triple models of the two five-element factors ---------------

def test_c03_triple_models_of_m3_and_n5_tensors(catalog6):
    failures = []
    m3, n5 = lk.m3(), lk.n5()
    for lat in catalog6:
        if lat.is_distributive:
            t = lk.tensor_product(m3, lat, guard=5 * lat.n)
            trip = lk.triples(lat, 'm3bracket')
            if not isomorphic(t.lattice, trip.lattice):
                failures.append((lat.name, 'm3bracket'))
        t = lk.tensor_product(n5, lat, guard=5 * lat.n)
        trip = lk.triples(lat, 'n5bracket')
        if not isomorphic(t.lattice, trip.lattice):
            failures.append((lat.name, 'n5bracket'))
    verdict_line('c03 balanced and interval triples model the tensors',
                 failures)


# --- 4: hom representation of the tensor ------------------------------------

def test_c04_hom_representation(catalog5):
    failures = []
    for a in catalog5:
        for b in catalog5:
            if not lk.hom_tensor(a, b).iso_check(guard=a.n * b.n):
                failures.append((a.name, b.name))
    verdict_line('c04 antitone-hom representation on all pairs <= 5',
                 failures)


# --- 5: classification ground truths ----------------------------------------

def distributive_catalog(max_size):
    '''Every distributive lattice with at most max_size elements, up to iso.

    Complete by finite duality: each one is the down-set lattice of its
    join-irreducible subposet, and every poset shows up here through a
    natural labeling. Extensions add one maximal element at a time, and
    the down-set count only grows, so oversized branches are cut early.
    '''
    lattices = []

    def lattice_of(downs):
        masks = sorted(downs)
        m = len(masks)
        leq = np.zeros((m, m), dtype=bool)
        for i in range(m):
            for j in range(m):
                leq[i, j] = masks[i] & masks[j] == masks[i]
        return lk.FiniteLattice(leq,
                                labels=[format(v, 'b') for v in masks])

    def extend(cols, downs):
        lattices.append(lattice_of(downs))
        k = len(cols)
        for d in downs:
            grown = downs + [dd | 1 << k for dd in downs if dd & d == d]
            if len(grown) <= max_size:
                extend(cols + (d | 1 << k,), grown)

    extend((), [0])
    unique = []
    for lat in lattices:
        if not any(isomorphic(lat, seen) for seen in unique):
            unique.append(lat)
    return unique


def test_c05_classification_ground_truths(catalog6):
    failures = []
    n5_report = lk.classify(lk.n5())
    if not (n5_report.sharply_transferable and n5_report.amenable):
        failures.append(('N5', n5_report.to_json()))
    m3_report = lk.classify(lk.m3())
    if m3_report.sharply_transferable or m3_report.amenable:
        failures.append(('M3', m3_report.to_json()))

    dist8 = distributive_catalog(8)
    if not all(lat.is_distributive for lat in dist8):
        failures.append('non-distributive member in the Birkhoff catalog')
    # second route for sizes the direct catalog still covers
    small_direct = [lat for lat in catalog6 if lat.is_distributive]
    small_birkhoff = [lat for lat in dist8 if lat.n <= 6]
    if len(small_direct) != len(small_birkhoff) or not all(
            any(isomorphic(a, b) for b in small_birkhoff)
            for a in small_direct):
        failures.append('Birkhoff route disagrees with direct catalog')
    for lat in dist8:
        if not lk.classify(lat).amenable:
            failures.append(('distributive not amenable', lat.n))

    if lk.whitman(lk.w7()).verdict:
        failures.append('W7 passed the interval condition')
    verdict_line('c05 classification of N5, M3, distributive <= 8, W7',
                 failures)


# --- 6: closed formula for the least covering box element -------------------

def test_c06_box_closure_formula_vs_scan(catalog4):
    failures = []
    shapes = ((1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (1, 2))
    for a in catalog4:
        for b in catalog4:
            box = box_product(a, b, guard=a.n * b.n)
            space = box.space
            coords = list(itertools.product(range(a.n), range(b.n)))
            for m, k in shapes:
                for bts in itertools.combinations_with_replacement(
                        coords, m):
                    for cts in itertools.combinations_with_replacement(
                            coords, k):
                        h = BoxdotElement.from_terms(space, list(bts),
                                                     list(cts))
                        got = box_closure(h).extent
                        containing = [mk for mk in box.masks
                                      if mk & h.extent == h.extent]
                        least = containing[0]
                        for mk in containing[1:]:
                            least &= mk
                        if got != least or got not in box.masks:
                            failures.append((a.name, b.name, bts, cts))
    verdict_line('c06 closure formula equals least containing element, '
                 'all generators with <= 3 terms, all pairs <= 4', failures)


# --- 7: structure theorems for the confined ideal ---------------------------

def test_c07_confined_ideal_theorems(catalog5, catalog6):
    failures = []
    for lat in catalog6:
        for which in ('m3', 'n5'):
            rep = lk.triple_iso_check(lat, which)
            if not rep.verdict:
                failures.append(('triple', lat.name, which))
    for a in catalog5:
        for b in catalog5:
            rep = lk.ltp_theorems(a, b, guard=a.n * b.n)
            if not rep.verdict:
                failures.append(('ltp', a.name, b.name))
    for a in catalog5:
        for b in catalog5:
            rep = lk.mu_iso(a, b, guard=a.n * b.n)
            if not (rep.verdict and rep.formula_ii and rep.formula_iii
                    and rep.dual_consistent):
                failures.append(('mu', a.name, b.name))
    verdict_line('c07 triple isomorphisms <= 6, dual/capped/equality and '
                 'congruence formulas on all pairs <= 5', failures)


# --- 8: the two N5 triple families are one element apart --------------------

def test_c08_n5_triple_families_proper_subset():
    failures = []
    narrow = lk.triples(lk.n5(), 'nL')
    wide = lk.triples(lk.n5(), 'n5bracket')
    if not set(narrow.members) < set(wide.members):
        failures.append('not a strict subset')
    if (len(narrow.members), len(wide.members)) != (42, 43):
        failures.append(('sizes', len(narrow.members), len(wide.members)))
    verdict_line('c08 meet-generated N5 triples sit strictly inside the '
                 'interval triples, 42 vs 43', failures)


# --- 9: canonical congruence-preserving embeddings --------------------------

def test_c09_congruence_preserving_embeddings(catalog5):
    failures = []
    random_simple = lk.random_lattice(3873, 6)
    if not con_lattice(random_simple).is_simple:
        failures.append('chosen random lattice is not simple')
    for lat in catalog5:
        rep = lk.embedding_check(None, lat, 'diagonal')
        if not (rep.verdict and rep.congruence_preserving):
            failures.append(('diagonal', lat.name))
        for s in (lk.m3(), random_simple):
            for which in ('j', 'j_s'):
                rep = lk.embedding_check(s, lat, which, element=1)
                if not (rep.verdict and rep.congruence_preserving):
                    failures.append((which, s.name or s.n, lat.name))
    verdict_line('c09 diagonal and simple-factor embeddings preserve '
                 'congruences', failures)


# --- 10: permutability carries over to the confined ideal -------------------

def test_c10_permutability_preserved(catalog5):
    failures = []
    permutable_members = [lat for lat in catalog5 if lk.permutable(lat)[0]]
    if len(permutable_members) < 2:
        failures.append('catalog lost its permutable members')
    for a in permutable_members:
        for b in permutable_members:
            ltp = lk.lattice_tensor_product(a, b, guard=a.n * b.n)
            ok, witness = lk.permutable(ltp.lattice)
            if not ok:
                failures.append((a.name, b.name, witness))
    verdict_line('c10 permutable congruences survive the lattice tensor '
                 'product', failures)


# --- 11: free-lattice kernel ------------------------------------------------

def test_c11_free_lattice_kernel():
    failures = []
    two = free_lattice_fragment(2, 2)
    if not (two.saturated and len(two.terms) == 4):
        failures.append(('two-generator fragment', len(two.terms)))
    if len(free_lattice_fragment(2, 4).terms) != 4:
        failures.append('two-generator fragment grew past 4')

    terms = free_lattice_fragment(3, 2).terms
    for t in terms:
        if not whitman_leq(t, t):
            failures.append(('not reflexive', lk.format_term(t)))
    for s, t in itertools.permutations(terms, 2):
        if whitman_leq(s, t) and whitman_leq(t, s):
            failures.append(('antisymmetry broke',
                             lk.format_term(s), lk.format_term(t)))
    for s, t, u in itertools.product(terms, repeat=3):
        if whitman_leq(s, t) and whitman_leq(t, u) \
                and not whitman_leq(s, u):
            failures.append(('not transitive', lk.format_term(s),
                             lk.format_term(t), lk.format_term(u)))
    verdict_line('c11 two-generator free lattice is the 4-element kernel; '
                 'term order is a partial order', failures)


# --- 12: spikes and representability ----------------------------------------

def test_c12_spikes_and_representability():
    failures = []
    rep = lk.spike_analysis(lk.chain(2))
    if rep.spike_free or rep.spikes != [(0, 1)]:
        failures.append(('2-chain', rep.to_json()))
    for k in (1, 2, 3, 4):
        anti = FinitePoset(np.eye(k, dtype=bool))
        if not lk.spike_analysis(anti).spike_free:
            failures.append(('antichain', k))
    if lk.con_of_amenable_representable(lk.chain(3)).verdict:
        failures.append('3-chain reported representable')
    verdict_line('c12 spike verdicts and the 3-chain obstruction', failures)
