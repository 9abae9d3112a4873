"""Free-lattice terms: canonical forms, the word problem, fragments."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import latkit as lk
from latkit import MalformedTerm, SizeLimitExceeded
from latkit.freelat import (FreeTerm, SymbolicTensor, canonical_term,
                            format_term, free_lattice_fragment, parse_term,
                            whitman_leq)


def term(text, n=3):
    return parse_term(text, n)


def canon_str(text, n=3):
    return format_term(canonical_term(term(text, n)))


def test_idempotent_join_collapses():
    assert canon_str('x+x') == 'x'
    assert canon_str('x*x') == 'x'


def test_nested_joins_flatten():
    t = canonical_term(term('x+(y+z)'))
    assert t.node[0] == 'join' and len(t.node[1]) == 3


def test_absorption():
    assert canon_str('x+(x*y)') == 'x'
    assert canon_str('x*(x+y)') == 'x'


def test_component_absorbs_dual_child():
    'A meet-child below one component of the join collapses into it.'
    assert canon_str('y+((x+y)*(x+z))') == 'x+y'


def test_canonical_is_idempotent():
    rep = free_lattice_fragment(3, 2)
    for t in rep.terms:
        assert canonical_term(t) == t


def test_canonical_preserves_equivalence():
    for text in ('x+(y*(x+z))', '(x+y)*(x+y+z)', 'x*(y+(z*x))'):
        t = term(text)
        c = canonical_term(t)
        assert whitman_leq(t, c) and whitman_leq(c, t)


def test_word_problem_examples():
    assert whitman_leq(term('x*(y+z)'), term('x'))
    assert not whitman_leq(term('x'), term('y'))
    assert whitman_leq(term('x+(y*z)'), term('(x+y)*(x+z)'))
    assert not whitman_leq(term('(x+y)*(x+z)'), term('x+(y*z)'))


def test_word_problem_rejects_mismatched_arity():
    with pytest.raises(MalformedTerm):
        whitman_leq(term('x', 2), term('x', 3))


def test_generators_form_antichain():
    for i in range(3):
        for j in range(3):
            if i != j:
                assert not whitman_leq(FreeTerm.var(3, i), FreeTerm.var(3, j))


def test_fragment_one_generator():
    rep = free_lattice_fragment(1, 4)
    assert len(rep.terms) == 1 and rep.saturated


def test_fragment_two_generators_saturates_at_four():
    for depth in (1, 2, 4):
        rep = free_lattice_fragment(2, depth)
        assert len(rep.terms) == 4
        assert rep.saturated
    shapes = {format_term(t) for t in free_lattice_fragment(2, 1).terms}
    assert shapes == {'x', 'y', 'x+y', 'x*y'}


def test_fragment_three_generators_grows():
    d1 = free_lattice_fragment(3, 1)
    d2 = free_lattice_fragment(3, 2)
    assert len(d1.terms) == 11
    assert len(d2.terms) == 25
    assert not d1.saturated and not d2.saturated
    assert not d1.join_closed or not d1.meet_closed


def test_fragment_expansion_guard():
    with pytest.raises(SizeLimitExceeded):
        free_lattice_fragment(3, 3)


def test_fragment_order_is_a_poset():
    rep = free_lattice_fragment(3, 2)
    terms = rep.terms
    n = len(terms)
    leq = [[whitman_leq(terms[i], terms[j]) for j in range(n)]
           for i in range(n)]
    for i in range(n):
        assert leq[i][i]
        for j in range(n):
            if leq[i][j] and leq[j][i]:
                assert terms[i] == terms[j]  # antisymmetry = equality
            for k in range(n):
                if leq[i][j] and leq[j][k]:
                    assert leq[i][k]
    assert (rep.poset.leq == leq).all()


def test_order_is_sound_for_lattice_evaluation():
    'Provable inequalities must hold under every interpretation.'
    rep = free_lattice_fragment(3, 1)
    lat = lk.n5()
    for s, t in itertools.permutations(rep.terms, 2):
        if not whitman_leq(s, t):
            continue
        for assign in itertools.product(range(lat.n), repeat=3):
            assert lat.leq[s.evaluate(lat, assign), t.evaluate(lat, assign)]


def test_parse_format_round_trip():
    rep = free_lattice_fragment(3, 2)
    for t in rep.terms:
        assert parse_term(format_term(t), 3) == t


def test_parse_uses_aliases_only_for_three():
    from latkit import MalformedInput
    assert format_term(term('x0+x3', 5)) == 'x0+x3'
    assert format_term(term('x+y', 3)) == 'x+y'
    for bad in ('x+q', 'x4', 'x+'):
        with pytest.raises(MalformedInput):
            parse_term(bad, 3)


def test_evaluate_folds_through_tables():
    lat = lk.m3()
    t = term('(x+y)*z')
    for assign in itertools.product(range(lat.n), repeat=3):
        x, y, z = assign
        expected = lat.meet_table[lat.join_table[x, y], z]
        assert t.evaluate(lat, assign) == expected


@st.composite
def term_nodes(draw, n=3, depth=2):
    if depth == 0:
        return FreeTerm.var(n, draw(st.integers(0, n - 1)))
    kind = draw(st.sampled_from(['var', 'join', 'meet']))
    if kind == 'var':
        return FreeTerm.var(n, draw(st.integers(0, n - 1)))
    kids = draw(st.lists(term_nodes(n=n, depth=depth - 1), min_size=2,
                         max_size=3))
    return (FreeTerm.join_of if kind == 'join' else FreeTerm.meet_of)(kids)


@settings(max_examples=60, deadline=None)
@given(term_nodes())
def test_canonical_form_properties(t):
    c = canonical_term(t)
    assert c.is_canonical
    assert canonical_term(c) == c
    assert whitman_leq(t, c) and whitman_leq(c, t)


@settings(max_examples=40, deadline=None)
@given(term_nodes(), term_nodes())
def test_equivalent_terms_share_canonical_form(s, t):
    if whitman_leq(s, t) and whitman_leq(t, s):
        assert canonical_term(s) == canonical_term(t)


def test_symbolic_tensor_pretty():
    a_ids = lk.m3().atoms()
    x, y, z = (FreeTerm.var(3, i) for i in range(3))
    alpha = SymbolicTensor.join_of([
        SymbolicTensor.pure(a_ids[0], x),
        SymbolicTensor.pure(a_ids[1], y),
        SymbolicTensor.pure(a_ids[2], z)])
    text = alpha.pretty(lk.m3())
    assert text == 'a(x)x v b(x)y v c(x)z'
    beta = SymbolicTensor.pure(a_ids[0], x.join(y).join(z))
    assert beta.pretty(lk.m3()) == 'a(x)(x+y+z)'


def test_symbolic_tensor_evaluates_in_finite_quotients():
    m3, b2 = lk.m3(), lk.boolean(2)
    t = lk.tensor_product(m3, b2)
    a_ids = m3.atoms()
    x, y, z = (FreeTerm.var(3, i) for i in range(3))
    alpha = SymbolicTensor.join_of([SymbolicTensor.pure(a_ids[k], v)
                                    for k, v in enumerate((x, y, z))])
    for assign in ((0, 1, 2), (3, 3, 3), (1, 2, 0)):
        got = alpha.evaluate(t, assign)
        parts = [t.index[t.space.pure(a_ids[k], assign[k])] for k in range(3)]
        expected = parts[0]
        for p in parts[1:]:
            expected = int(t.lattice.join_table[expected, p])
        assert got == expected
