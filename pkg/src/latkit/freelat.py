'''Free-lattice terms, their order, and symbolic tensor elements.

Terms are nested tuples: ('var', i), ('join', children) or
('meet', children). The order is decided by the standard mutual
recursion (joins split on the left, meets on the right, generators are
prime, and the mixed meet-vs-join case tries all four splits), which
is sound and complete for free lattices.

Canonical forms are flattened, sorted, have no child below the join of
the others, and no meet-child of a join keeps a component that already
lies below the whole join (dually for meets). Two terms denote the
same element exactly when their canonical forms are equal.
'''

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .config import resolve_guard
from .errors import MalformedInput, MalformedTerm, SizeLimitExceeded
from .order import FinitePoset

FRAGMENT_EXPANSION_GUARD = 16

_KIND_RANK = {'var': 0, 'join': 1, 'meet': 2}
_DUAL = {'join': 'meet', 'meet': 'join'}


def _validate_node(node, n: int):
    if not isinstance(node, tuple) or len(node) != 2:
        raise MalformedTerm(f'not a term node: {node!r}')
    kind, payload = node
    if kind == 'var':
        if not isinstance(payload, int) or not 0 <= payload < n:
            raise MalformedTerm(
                f'generator index {payload!r} outside 0..{n - 1}')
        return
    if kind in ('join', 'meet'):
        if not isinstance(payload, tuple) or not payload:
            raise MalformedTerm(f'{kind} needs a nonempty child tuple')
        for child in payload:
            _validate_node(child, n)
        return
    raise MalformedTerm(f'unknown node kind {kind!r}')


@lru_cache(maxsize=None)
def _depth(node) -> int:
    if node[0] == 'var':
        return 0
    return 1 + max(_depth(c) for c in node[1])


@lru_cache(maxsize=None)
def _key(node):
    'Total order on terms: depth, then kind, then children lexicographic.'
    if node[0] == 'var':
        return (0, 0, (node[1],))
    return (_depth(node), _KIND_RANK[node[0]],
            tuple(_key(c) for c in node[1]))


@lru_cache(maxsize=None)
def _leq(s, t) -> bool:
    if s == t:
        return True
    if s[0] == 'join':
        return all(_leq(c, t) for c in s[1])
    if t[0] == 'meet':
        return all(_leq(s, c) for c in t[1])
    # s is a var or meet, t is a var or join
    if s[0] == 'var':
        if t[0] == 'var':
            return False
        return any(_leq(s, c) for c in t[1])
    if t[0] == 'var':
        return any(_leq(c, t) for c in s[1])
    return (any(_leq(c, t) for c in s[1])
            or any(_leq(s, c) for c in t[1]))


def _below(kind: str, a, b) -> bool:
    'a under b for joins, a over b for meets.'
    return _leq(a, b) if kind == 'join' else _leq(b, a)


def _flatten(kind: str, children):
    out = []
    for c in children:
        if c[0] == kind:
            out.extend(c[1])
        else:
            out.append(c)
    return list(dict.fromkeys(out))


def _assemble(kind: str, children):
    if len(children) == 1:
        return children[0]
    return (kind, tuple(sorted(set(children), key=_key)))


@lru_cache(maxsize=None)
def _canon(node):
    if node[0] == 'var':
        return node
    kind = node[0]
    work = _flatten(kind, [_canon(c) for c in node[1]])
    while True:
        whole = _assemble(kind, work)
        # a dual-kind child with a component already absorbed by the
        # whole term is replaced by that component
        upgraded = False
        for i, c in enumerate(work):
            if c[0] == _DUAL[kind]:
                for comp in c[1]:
                    if _below(kind, comp, whole):
                        work = _flatten(kind, work[:i] + [comp]
                                        + work[i + 1:])
                        upgraded = True
                        break
            if upgraded:
                break
        if upgraded:
            continue
        # drop any child under the bound of the others
        dropped = False
        for i, c in enumerate(work):
            if len(work) == 1:
                break
            rest = _assemble(kind, work[:i] + work[i + 1:])
            if _below(kind, c, rest):
                work.pop(i)
                dropped = True
                break
        if not dropped:
            return _assemble(kind, work)


@dataclass(frozen=True)
class FreeTerm:
    'A term over n free generators, as a nested node tuple.'

    n: int
    node: tuple

    def __post_init__(self):
        _validate_node(self.node, self.n)

    @classmethod
    def var(cls, n: int, i: int) -> 'FreeTerm':
        return cls(n, ('var', int(i)))

    @classmethod
    def join_of(cls, terms) -> 'FreeTerm':
        terms = list(terms)
        if not terms:
            raise MalformedTerm('join of no terms')
        n = terms[0].n
        if any(t.n != n for t in terms):
            raise MalformedTerm('mixed generator counts')
        if len(terms) == 1:
            return terms[0]
        return cls(n, ('join', tuple(t.node for t in terms)))

    @classmethod
    def meet_of(cls, terms) -> 'FreeTerm':
        terms = list(terms)
        if not terms:
            raise MalformedTerm('meet of no terms')
        n = terms[0].n
        if any(t.n != n for t in terms):
            raise MalformedTerm('mixed generator counts')
        if len(terms) == 1:
            return terms[0]
        return cls(n, ('meet', tuple(t.node for t in terms)))

    def join(self, other: 'FreeTerm') -> 'FreeTerm':
        return FreeTerm.join_of([self, other])

    def meet(self, other: 'FreeTerm') -> 'FreeTerm':
        return FreeTerm.meet_of([self, other])

    @property
    def depth(self) -> int:
        return _depth(self.node)

    @property
    def is_canonical(self) -> bool:
        return _canon(self.node) == self.node

    def canonical(self) -> 'FreeTerm':
        return FreeTerm(self.n, _canon(self.node))

    def leq(self, other: 'FreeTerm') -> bool:
        return whitman_leq(self, other)

    def evaluate(self, lattice, assignment) -> int:
        '''Value of the term in a finite lattice.

        assignment[i] is the lattice id substituted for generator i.
        '''
        assignment = [int(x) for x in assignment]
        if len(assignment) != self.n:
            raise MalformedInput(
                f'need {self.n} values, got {len(assignment)}')

        def ev(node):
            if node[0] == 'var':
                return assignment[node[1]]
            table = (lattice.join_table if node[0] == 'join'
                     else lattice.meet_table)
            acc = ev(node[1][0])
            for c in node[1][1:]:
                acc = int(table[acc, ev(c)])
            return acc

        return ev(self.node)

    def __str__(self) -> str:
        return format_term(self)


def canonical_term(t: FreeTerm) -> FreeTerm:
    'Flattened, sorted, redundancy-free equivalent term; idempotent.'
    return t.canonical()


def whitman_leq(s: FreeTerm, t: FreeTerm) -> bool:
    'Decides s <= t in the free lattice on their generators.'
    if s.n != t.n:
        raise MalformedTerm('terms over different generator counts')
    return _leq(s.node, t.node)


# --- parsing and printing ---------------------------------------------------

_ALIASES = ('x', 'y', 'z')


def _var_name(i: int, n: int) -> str:
    if n <= 3:
        return _ALIASES[i]
    return f'x{i}'


def format_term(t: FreeTerm) -> str:
    'Infix form: + for join, * for meet (binds tighter), parentheses.'

    def fmt(node, parent):
        if node[0] == 'var':
            return _var_name(node[1], t.n)
        sep = '+' if node[0] == 'join' else '*'
        body = sep.join(fmt(c, node[0]) for c in node[1])
        if node[0] == 'join' and parent == 'meet':
            return f'({body})'
        return body

    return fmt(t.node, None)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in '+*()':
            tokens.append(ch)
            i += 1
        elif ch.isalpha():
            j = i + 1
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise MalformedInput(f'unexpected character {ch!r} in term')
    return tokens


def parse_term(text: str, n: int) -> FreeTerm:
    '''Parse the infix syntax over n generators.

    Generators are x0..x{n-1}; the aliases x, y, z name the first
    three. Structure is kept as written (no canonicalization).
    '''
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(expect=None):
        tok = peek()
        if tok is None or (expect is not None and tok != expect):
            raise MalformedInput(
                f'expected {expect or "a token"}, found {tok!r}')
        pos[0] += 1
        return tok

    def var_index(name: str) -> int:
        if name in _ALIASES:
            i = _ALIASES.index(name)
        elif name.startswith('x') and name[1:].isdigit():
            i = int(name[1:])
        else:
            raise MalformedInput(f'unknown generator {name!r}')
        if not 0 <= i < n:
            raise MalformedInput(
                f'generator {name!r} outside 0..{n - 1}')
        return i

    def atom():
        tok = peek()
        if tok == '(':
            take('(')
            node = expr()
            take(')')
            return node
        if tok is None or tok in '+*)':
            raise MalformedInput(f'expected a term, found {tok!r}')
        return ('var', var_index(take()))

    def factor():
        parts = [atom()]
        while peek() == '*':
            take('*')
            parts.append(atom())
        return parts[0] if len(parts) == 1 else ('meet', tuple(parts))

    def expr():
        parts = [factor()]
        while peek() == '+':
            take('+')
            parts.append(factor())
        return parts[0] if len(parts) == 1 else ('join', tuple(parts))

    node = expr()
    if pos[0] != len(tokens):
        raise MalformedInput(f'trailing input from {tokens[pos[0]]!r}')
    return FreeTerm(n, node)


# --- finite fragments --------------------------------------------------------

@dataclass
class FragmentReport:
    'Canonical terms up to an alternation depth, with their order.'

    n: int
    depth: int
    terms: tuple
    poset: FinitePoset
    join_closed: bool
    meet_closed: bool

    @property
    def saturated(self) -> bool:
        'No deeper term adds anything: closed under joins and meets.'
        return self.join_closed and self.meet_closed

    def to_json(self) -> dict:
        return {'n': self.n, 'depth': self.depth,
                'size': len(self.terms),
                'terms': [str(t) for t in self.terms],
                'join_closed': self.join_closed,
                'meet_closed': self.meet_closed,
                'saturated': self.saturated}


def _antichains(nodes):
    'All subsets of >= 2 pairwise incomparable terms.'
    picked = []

    def rec(i):
        if i == len(nodes):
            if len(picked) >= 2:
                yield tuple(picked)
            return
        yield from rec(i + 1)
        c = nodes[i]
        if all(not _leq(c, d) and not _leq(d, c) for d in picked):
            picked.append(c)
            yield from rec(i + 1)
            picked.pop()

    yield from rec(0)


def free_lattice_fragment(n: int, depth: int,
                          guard: int | None = None) -> FragmentReport:
    '''All canonical terms of alternation depth <= depth, ordered.

    Each round forms joins and meets of antichains of the terms found
    so far (comparable subsets would only rebuild existing elements).
    Rounds whose starting set exceeds the guard raise, since the
    expansion is exponential in that count.
    '''
    if n < 1 or depth < 0:
        raise MalformedInput('need n >= 1 and depth >= 0')
    cap = resolve_guard(guard, FRAGMENT_EXPANSION_GUARD)
    nodes = {('var', i) for i in range(n)}
    for _ in range(depth):
        if len(nodes) > cap:
            raise SizeLimitExceeded(
                f'fragment round over {len(nodes)} terms exceeds the '
                f'guard {cap}; pass guard= to raise the limit')
        current = sorted(nodes, key=_key)
        fresh = set()
        for chain_free in _antichains(current):
            fresh.add(_canon(('join', chain_free)))
            fresh.add(_canon(('meet', chain_free)))
        nodes |= fresh
    ordered = sorted(nodes, key=_key)
    terms = tuple(FreeTerm(n, node) for node in ordered)
    k = len(ordered)
    leq = np.zeros((k, k), dtype=bool)
    for i, s in enumerate(ordered):
        for j, t in enumerate(ordered):
            leq[i, j] = _leq(s, t)
    poset = FinitePoset(leq, labels=[str(t) for t in terms],
                        name=f'F({n})@{depth}')
    join_closed = all(
        _canon(('join', (s, t))) in nodes
        for s, t in combinations(ordered, 2))
    meet_closed = all(
        _canon(('meet', (s, t))) in nodes
        for s, t in combinations(ordered, 2))
    return FragmentReport(n=n, depth=depth, terms=terms, poset=poset,
                          join_closed=join_closed, meet_closed=meet_closed)


# --- symbolic tensor elements ------------------------------------------------

@dataclass(frozen=True)
class SymbolicTensor:
    '''A join/meet combination of pure tensors with free-term sides.

    Purely syntactic: it can be printed and evaluated in any finite
    quotient (an assignment of the free generators into a finite
    lattice), but nothing here decides anything about the infinite
    object itself.
    '''

    n: int
    node: tuple  # ('pure', left_id, term_node) | ('join'|'meet', kids)

    @classmethod
    def pure(cls, left_id: int, term: FreeTerm) -> 'SymbolicTensor':
        return cls(term.n, ('pure', int(left_id), term.node))

    @classmethod
    def join_of(cls, parts) -> 'SymbolicTensor':
        parts = list(parts)
        return cls(parts[0].n, ('join', tuple(p.node for p in parts)))

    @classmethod
    def meet_of(cls, parts) -> 'SymbolicTensor':
        parts = list(parts)
        return cls(parts[0].n, ('meet', tuple(p.node for p in parts)))

    def pretty(self, left_lattice=None) -> str:
        def name(i):
            return (left_lattice.label_of(i) if left_lattice is not None
                    else f'#{i}')

        def fmt(node, parent):
            if node[0] == 'pure':
                term = FreeTerm(self.n, node[2])
                body = str(term)
                if node[2][0] != 'var':
                    body = f'({body})'
                return f'{name(node[1])}(x){body}'
            sep = ' v ' if node[0] == 'join' else ' ^ '
            body = sep.join(fmt(c, node[0]) for c in node[1])
            if parent is not None:
                return f'({body})'
            return body

        return fmt(self.node, None)

    def evaluate(self, tensor, assignment) -> int:
        '''Value in a finite tensor, as an element id.

        assignment[i] is the id, in the right-hand factor, substituted
        for generator i; pure nodes land on pure tensors and composite
        nodes use the finite tensor's own tables.
        '''
        space = tensor.space
        by_mask = {tensor.mask_of(i): i
                   for i in range(tensor.lattice.n)}

        def ev(node):
            if node[0] == 'pure':
                right = FreeTerm(self.n, node[2]).evaluate(space.b,
                                                           assignment)
                return by_mask[space.mask_of(space.pure(node[1], right))]
            table = (tensor.lattice.join_table if node[0] == 'join'
                     else tensor.lattice.meet_table)
            acc = ev(node[1][0])
            for c in node[1][1:]:
                acc = int(table[acc, ev(c)])
            return acc

        return ev(self.node)
