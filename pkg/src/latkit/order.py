'''Finite posets, join-semilattices and lattices over dense integer ids.

Elements are 0..n-1 with string labels kept as metadata. The order is a
dense boolean matrix; cover relations, bound tables and irreducibles are
derived lazily and cached. Instances are treated as immutable once
built.
'''

from __future__ import annotations

import itertools
from functools import cached_property, reduce

import numpy as np

from .errors import CyclicCovers, NotALattice, UnknownFamily


def _bool_matrix(leq) -> np.ndarray:
    m = np.array(leq, dtype=bool)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError('order relation must be a square matrix')
    return m


def _bool_mm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # float32 keeps the path-count sums exact far beyond any feasible n
    return (x.astype(np.float32) @ y.astype(np.float32)) > 0.5


def _validate_order(m: np.ndarray) -> None:
    n = m.shape[0]
    if not m.diagonal().all():
        raise ValueError('order relation is not reflexive')
    if (m & m.T & ~np.eye(n, dtype=bool)).any():
        raise ValueError('order relation is not antisymmetric')
    if (_bool_mm(m, m) & ~m).any():
        raise ValueError('order relation is not transitive')


def _mask_of(flags: np.ndarray) -> int:
    mask = 0
    for i in np.flatnonzero(flags):
        mask |= 1 << int(i)
    return mask


class FinitePoset:
    'Finite poset on 0..n-1 with a dense boolean leq matrix.'

    def __init__(self, leq, labels=None, name=None, validate=True):
        m = _bool_matrix(leq)
        if validate:
            _validate_order(m)
        m.setflags(write=False)
        self.leq = m
        self.n = int(m.shape[0])
        if labels is None:
            labels = tuple(str(i) for i in range(self.n))
        self.labels = tuple(str(s) for s in labels)
        if len(self.labels) != self.n:
            raise ValueError('label count does not match element count')
        self.name = name

    @classmethod
    def from_covers(cls, labels, covers, name=None):
        'Build from labels and cover pairs [lower, upper]; rejects cycles.'
        labels = tuple(labels)
        n = len(labels)
        adj = [[] for _ in range(n)]
        indeg = [0] * n
        for lo, hi in covers:
            lo, hi = int(lo), int(hi)
            if not (0 <= lo < n and 0 <= hi < n):
                raise ValueError(f'cover pair ({lo},{hi}) out of range')
            if lo == hi:
                raise CyclicCovers(f'cover pair ({lo},{hi}) is a self-loop',
                                   witness=(lo, hi))
            adj[lo].append(hi)
            indeg[hi] += 1
        order, queue = [], [i for i in range(n) if indeg[i] == 0]
        indeg = list(indeg)
        while queue:
            i = queue.pop()
            order.append(i)
            for j in adj[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if len(order) != n:
            cycle = [i for i in range(n) if indeg[i] > 0]
            raise CyclicCovers('cover relation has a cycle', witness=cycle)
        leq = np.eye(n, dtype=bool)
        for i in reversed(order):
            for j in adj[i]:
                leq[i] |= leq[j]
        # the construction guarantees a poset but not a lattice
        inst = cls(leq, labels=labels, name=name, validate=False)
        inst._ensure_complete()
        return inst

    def _ensure_complete(self):
        'Subclasses force whatever completeness their order promises.'

    def __repr__(self):
        kind = type(self).__name__
        tag = f' {self.name!r}' if self.name else ''
        return f'<{kind}{tag} n={self.n}>'

    def label_of(self, i: int) -> str:
        return self.labels[i]

    @cached_property
    def lt(self) -> np.ndarray:
        m = self.leq & ~np.eye(self.n, dtype=bool)
        m.setflags(write=False)
        return m

    @cached_property
    def covers(self) -> np.ndarray:
        'covers[i, j] is True when j covers i.'
        lt = self.lt
        m = lt & ~_bool_mm(lt, lt)
        m.setflags(write=False)
        return m

    @cached_property
    def cover_pairs(self) -> tuple:
        return tuple((int(i), int(j)) for i, j in np.argwhere(self.covers))

    @cached_property
    def down_masks(self) -> tuple:
        'down_masks[x] is the bitmask of {y : y <= x}.'
        return tuple(_mask_of(self.leq[:, x]) for x in range(self.n))

    @cached_property
    def up_masks(self) -> tuple:
        return tuple(_mask_of(self.leq[x, :]) for x in range(self.n))

    @cached_property
    def heights(self) -> np.ndarray:
        h = np.zeros(self.n, dtype=np.int32)
        for x in np.argsort(self.leq.sum(axis=1))[::-1]:  # few below first
            below = np.flatnonzero(self.covers[:, x])
            if len(below):
                h[x] = h[below].max() + 1
        h.setflags(write=False)
        return h

    @cached_property
    def maximal_ids(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(~self.lt.any(axis=1)))

    @cached_property
    def minimal_ids(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(~self.lt.any(axis=0)))

    def dual(self):
        return FinitePoset(self.leq.T.copy(), labels=self.labels,
                           name=f'{self.name}^d' if self.name else None,
                           validate=False)

    def subposet(self, ids):
        'Induced subposet; element k of the result is ids[k].'
        ids = list(int(i) for i in ids)
        sub = self.leq[np.ix_(ids, ids)].copy()
        return FinitePoset(sub, labels=[self.labels[i] for i in ids], validate=False)

    # --- isomorphism machinery -------------------------------------------

    @cached_property
    def _colors(self) -> tuple:
        'Iteratively refined isomorphism-invariant color per element.'
        n = self.n
        down = self.leq.sum(axis=0)
        up = self.leq.sum(axis=1)
        covers = self.covers
        ncov_up = covers.sum(axis=1)
        ncov_dn = covers.sum(axis=0)
        def canon(sigs):
            # ranks follow the sorted signatures, so they are label-invariant
            rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
            return [rank[s] for s in sigs]

        cols = canon([(int(self.heights[i]), int(down[i]), int(up[i]),
                       int(ncov_dn[i]), int(ncov_up[i])) for i in range(n)])
        for _ in range(n):
            sigs = []
            for i in range(n):
                lo = tuple(sorted(cols[j] for j in np.flatnonzero(covers[:, i])))
                hi = tuple(sorted(cols[j] for j in np.flatnonzero(covers[i, :])))
                sigs.append((cols[i], lo, hi))
            nxt = canon(sigs)
            if len(set(nxt)) == len(set(cols)):
                cols = nxt
                break
            cols = nxt
        return tuple(cols)

    def iso_invariant(self):
        'Hashable invariant equal for isomorphic posets.'
        return (self.n, tuple(sorted(self._colors)), int(self.leq.sum()))


def _check_mapping(a: FinitePoset, b: FinitePoset, mapping) -> bool:
    perm = np.asarray(mapping, dtype=np.int64)
    return bool((b.leq[np.ix_(perm, perm)] == a.leq).all())


def find_isomorphism(a: FinitePoset, b: FinitePoset):
    '''Order isomorphism from a to b as a list (a-id -> b-id), or None.

    Backtracking over color-refined candidate sets, lowest id first, so
    the result is deterministic. Distributive lattice pairs shortcut
    through their join-irreducible posets.
    '''
    if a.n != b.n or a.iso_invariant() != b.iso_invariant():
        return None
    shortcut = _distributive_shortcut(a, b)
    if shortcut is not None:
        return shortcut
    ca, cb = a._colors, b._colors
    cands = {}
    for i in range(a.n):
        cands[i] = [j for j in range(b.n) if cb[j] == ca[i]]
        if not cands[i]:
            return None
    order = sorted(range(a.n), key=lambda i: (len(cands[i]), i))
    mapping = [-1] * a.n
    used = [False] * b.n
    placed = []
    aleq, bleq = a.leq, b.leq

    def extend(k: int) -> bool:
        if k == a.n:
            return True
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for p in placed:
                q = mapping[p]
                if aleq[i, p] != bleq[j, q] or aleq[p, i] != bleq[q, j]:
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                placed.append(i)
                if extend(k + 1):
                    return True
                placed.pop()
                used[j] = False
                mapping[i] = -1
        return False

    if not extend(0):
        return None
    assert _check_mapping(a, b, mapping)
    return list(mapping)


def _distributive_shortcut(a, b):
    'Map distributive lattices through their join-irreducible posets.'
    if not (isinstance(a, FiniteLattice) and isinstance(b, FiniteLattice)):
        return None
    if a.n <= 12 or not (a.is_distributive and b.is_distributive):
        return None
    ja, jb = a.join_irreducible_ids, b.join_irreducible_ids
    if len(ja) != len(jb):
        return None
    sub = find_isomorphism(a.subposet(ja), b.subposet(jb))
    if sub is None:
        return None
    jmap = {ja[k]: jb[sub[k]] for k in range(len(ja))}
    mapping = []
    for x in range(a.n):
        below = [jmap[p] for p in ja if a.leq[p, x]]
        mapping.append(b.join_of(below))
    if _check_mapping(a, b, mapping):
        return mapping
    return None


class JoinSemilattice(FinitePoset):
    '''Finite poset where every pair has a least upper bound; zero optional.

    With validate=True construction fails fast on a missing join; trusted
    callers pass validate=False and the table is built on first use.
    '''

    def __init__(self, leq, labels=None, name=None, validate=True):
        super().__init__(leq, labels=labels, name=name, validate=validate)
        if validate:
            self._ensure_complete()

    def _ensure_complete(self):
        self.join_table

    @cached_property
    def join_table(self) -> np.ndarray:
        table, missing = _lub_table(self.leq)
        if table is None:
            raise NotALattice(
                f'elements {missing[0]} and {missing[1]} have no join',
                witness=missing)
        table.setflags(write=False)
        return table

    @property
    def zero(self):
        'Least element id, or None when there is none.'
        mins = self.minimal_ids
        return mins[0] if len(mins) == 1 else None

    @property
    def one(self):
        'Greatest element id; a finite join-semilattice always has one.'
        return int(np.flatnonzero(self.leq[:, :].all(axis=0))[0])

    def join_of(self, items, empty=None):
        items = list(items)
        if not items:
            if empty is None and self.zero is None:
                raise ValueError('empty join in a semilattice without zero')
            return self.zero if empty is None else empty
        return int(reduce(lambda x, y: int(self.join_table[x, y]), items))

    @cached_property
    def join_irreducible_ids(self) -> tuple:
        '''Elements that are not the join of the elements strictly below.

        Minimal elements count unless they equal the zero.
        '''
        out = []
        for x in range(self.n):
            below = np.flatnonzero(self.lt[:, x])
            if len(below) == 0:
                if self.zero is None or x != self.zero:
                    out.append(x)
                continue
            if self.join_of(below) != x:
                out.append(x)
        return tuple(out)

    def join_irreducible_poset(self) -> FinitePoset:
        return self.subposet(self.join_irreducible_ids)


class FiniteLattice(JoinSemilattice):
    'Finite lattice: every pair has both a join and a meet.'

    def __init__(self, leq, labels=None, name=None, validate=True):
        if leq.shape[0] == 0:
            raise NotALattice('a lattice needs at least one element')
        super().__init__(leq, labels=labels, name=name, validate=validate)

    def _ensure_complete(self):
        self.join_table
        self.meet_table

    @cached_property
    def meet_table(self) -> np.ndarray:
        table, missing = _lub_table(np.ascontiguousarray(self.leq.T))
        if table is None:
            raise NotALattice(
                f'elements {missing[0]} and {missing[1]} have no meet',
                witness=missing)
        table.setflags(write=False)
        return table

    @property
    def zero(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @property
    def one(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def meet_of(self, items, empty=None):
        items = list(items)
        if not items:
            return self.one if empty is None else empty
        return int(reduce(lambda x, y: int(self.meet_table[x, y]), items))

    @cached_property
    def meet_irreducible_ids(self) -> tuple:
        return self.dual().join_irreducible_ids

    def lower_cover_of(self, x: int) -> int:
        'The unique lower cover of a join-irreducible element.'
        below = np.flatnonzero(self.covers[:, x])
        if len(below) != 1:
            raise ValueError(f'element {x} is not join-irreducible')
        return int(below[0])

    @cached_property
    def distributive_witness(self):
        'None, or a triple (x, y, z) with x/\\(y\\/z) != (x/\\y)\\/(x/\\z).'
        jt, mt = self.join_table, self.meet_table
        for x in range(self.n):
            mx = mt[x]
            lhs = mx[jt]
            rhs = jt[mx[:, None], mx[None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                y, z = (int(v) for v in bad[0])
                return (x, y, z)
        return None

    @property
    def is_distributive(self) -> bool:
        return self.distributive_witness is None

    def dual(self) -> 'FiniteLattice':
        d = FiniteLattice(self.leq.T.copy(), labels=self.labels,
                          name=f'{self.name}^d' if self.name else None,
                          validate=False)
        return d

    def meet_semilattice(self) -> JoinSemilattice:
        'The dual order as a join-semilattice (its join is this meet).'
        return JoinSemilattice(self.leq.T.copy(), labels=self.labels,
                               name=self.name, validate=False)

    def atoms(self) -> tuple:
        z = self.zero
        return tuple(int(i) for i in np.flatnonzero(self.covers[z, :]))


def _lub_table(leq: np.ndarray):
    'Least upper bound table from up-set rows, or (None, witness pair).'
    n = leq.shape[0]
    rows = {leq[i].tobytes(): i for i in range(n)}
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        li = leq[i]
        for j in range(i, n):
            k = rows.get((li & leq[j]).tobytes())
            if k is None:
                return None, (int(i), int(j))
            table[i, j] = table[j, i] = k
    return table, None


def is_lattice(poset: FinitePoset):
    'Verdict with witness: (True, None) or (False, (x, y, reason)).'
    up, missing = _lub_table(poset.leq)
    if up is None:
        return False, (missing[0], missing[1], 'no join')
    dn, missing = _lub_table(np.ascontiguousarray(poset.leq.T))
    if dn is None:
        return False, (missing[0], missing[1], 'no meet')
    if poset.n == 0:
        return False, (None, None, 'empty')
    return True, None


def build_lattice(labels, covers, name=None) -> FiniteLattice:
    'Lattice from labels and cover pairs; raises on cycles or missing bounds.'
    return FiniteLattice.from_covers(labels, covers, name=name)


# --- named families -------------------------------------------------------

def chain(n: int, name=None) -> FiniteLattice:
    if n < 1:
        raise UnknownFamily('a chain needs at least one element')
    leq = np.triu(np.ones((n, n), dtype=bool))
    return FiniteLattice(leq, labels=[str(i) for i in range(n)],
                         name=name or f'C{n}', validate=False)


def boolean(k: int) -> FiniteLattice:
    if k < 0:
        raise UnknownFamily('boolean lattice exponent must be >= 0')
    if k > 10:
        raise UnknownFamily('boolean lattice exponent above 10 is not supported')
    n = 1 << k
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    labels = ['0'] if k == 0 else [format(m, f'0{k}b') for m in range(n)]
    return FiniteLattice(leq, labels=labels, name=f'B{k}', validate=False)


def m3() -> FiniteLattice:
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    return build_lattice(['0', 'a', 'b', 'c', '1'], covers, name='M3')


def n5() -> FiniteLattice:
    'Pentagon with join-irreducibles a > c and b.'
    covers = [(0, 3), (3, 1), (0, 2), (1, 4), (2, 4)]
    return build_lattice(['0', 'a', 'b', 'c', '1'], covers, name='N5')


def w7() -> FiniteLattice:
    'Two stacked diamonds: 0 < u,v < m < x,y < 1.'
    labels = ['0', 'u', 'v', 'm', 'x', 'y', '1']
    covers = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]
    return build_lattice(labels, covers, name='W7')


_FIXED_FAMILIES = {'M3': m3, 'N5': n5, 'W7': w7}


def named_family(name: str, n: int | None = None) -> FiniteLattice:
    'Families: Bn (boolean), Cn (chain), M3, N5, W7. Bn/Cn need n.'
    key = str(name).strip()
    canon = key.upper()
    if canon in _FIXED_FAMILIES:
        return _FIXED_FAMILIES[canon]()
    if canon in ('BN', 'CN'):
        if n is None:
            raise UnknownFamily(f'family {key} needs a value for n')
        return boolean(int(n)) if canon == 'BN' else chain(int(n))
    if len(canon) >= 2 and canon[0] in 'BC' and canon[1:].isdigit():
        k = int(canon[1:])
        return boolean(k) if canon[0] == 'B' else chain(k)
    raise UnknownFamily(f'unknown lattice family {name!r}')


# --- combinators ----------------------------------------------------------

def product(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    'Direct product; element (x, y) has id x*b.n + y.'
    leq = np.kron(a.leq, b.leq).astype(bool)
    labels = [f'({la},{lb})' for la in a.labels for lb in b.labels]
    name = None
    if a.name and b.name:
        name = f'{a.name}x{b.name}'
    return FiniteLattice(leq, labels=labels, name=name, validate=False)


def power(a: FiniteLattice, k: int) -> FiniteLattice:
    'Direct power with tuple labels.'
    if k < 1:
        raise ValueError('power exponent must be >= 1')
    leq = a.leq
    for _ in range(k - 1):
        leq = np.kron(leq, a.leq).astype(bool)
    labels = [','.join(t) for t in itertools.product(a.labels, repeat=k)]
    name = f'{a.name}^{k}' if a.name else None
    return FiniteLattice(leq, labels=labels, name=name, validate=False)


def ideal_lattice(s: JoinSemilattice) -> FiniteLattice:
    '''Lattice of ideals (nonempty down-sets closed under join) by inclusion.

    Finitely every ideal is principal, so this is the semilattice order
    completed with meets; without a zero the meet can be missing, which
    raises NotALattice.
    '''
    masks = s.down_masks
    order = np.empty((s.n, s.n), dtype=bool)
    for i in range(s.n):
        for j in range(s.n):
            order[i, j] = (masks[i] & ~masks[j]) == 0
    labels = ['{' + ','.join(s.labels[k] for k in range(s.n)
                             if masks[i] >> k & 1) + '}' for i in range(s.n)]
    return FiniteLattice(order, labels=labels,
                         name=f'Id({s.name})' if s.name else None, validate=False)
