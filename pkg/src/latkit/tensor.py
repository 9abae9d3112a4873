'''Tensor product of finite lattices with zero, computed on bi-ideals.

A bi-ideal of A x B contains the two boundary axes (A x {0}) u ({0} x B),
is pairwise down-closed, and is closed under joins of pairs sharing a
coordinate. Finitely each row {y : <x,y> in I} is a principal ideal of
B, so a bi-ideal is stored as the vector t of row maxima, subject to
t[x v y] = t[x] /\\ t[y] and t[0] = 1_B. The tensor product is the
lattice of all bi-ideals ordered by containment.

Two independent routes exist: closure generation from pure tensors
(tensor_product) and enumeration of join-reversing maps into the ideal
lattice (hom_tensor); iso_check compares them.
'''

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .config import resolve_guard
from .errors import MixedPreconditionViolated, SizeLimitExceeded
from .order import FiniteLattice, JoinSemilattice, _lub_table

TENSOR_DIMENSION_GUARD = 20


def _table_lists(table: np.ndarray) -> list:
    return [[int(v) for v in row] for row in table]


class BiIdealSpace:
    'Bi-ideal arithmetic for a fixed pair of semilattices with zero.'

    def __init__(self, a: JoinSemilattice, b: JoinSemilattice):
        if a.zero is None or b.zero is None:
            raise ValueError('tensor factors need a zero element')
        self.a = a
        self.b = b
        self.na = a.n
        self.nb = b.n
        self.zero_a = a.zero
        self.zero_b = b.zero
        self.one_b = b.one
        self._ajoin = _table_lists(a.join_table)
        self._bjoin = _table_lists(b.join_table)
        bmeet, missing = _lub_table(np.ascontiguousarray(b.leq.T))
        assert missing is None  # a finite join-semilattice with zero has meets
        self._bmeet = _table_lists(bmeet)
        self._bleq = [[bool(v) for v in row] for row in b.leq]
        # cover propagation order: upper element high first
        hs = a.heights
        self._acovers = sorted(a.cover_pairs, key=lambda p: -int(hs[p[1]]))
        # essential lateral joins: x < y incomparable-ish with x v y above both
        trip = []
        for x in range(a.n):
            for y in range(x + 1, a.n):
                j = self._ajoin[x][y]
                if j != x and j != y:
                    trip.append((x, y, j))
        self._atriples = trip

    # --- elements as row-maximum vectors ---------------------------------

    @cached_property
    def bottom(self) -> tuple:
        t = [self.zero_b] * self.na
        t[self.zero_a] = self.one_b
        return tuple(t)

    def pure(self, a_id: int, b_id: int) -> tuple:
        'Pure tensor a (x) b: boundary axes plus the down-set of <a, b>.'
        leq = self.a.leq
        t = [self.zero_b] * self.na
        for x in range(self.na):
            if leq[x, a_id]:
                t[x] = b_id
        t[self.zero_a] = self.one_b
        return tuple(t)

    def close(self, t) -> tuple:
        'Least bi-ideal whose rows contain the given row maxima.'
        t = list(t)
        t[self.zero_a] = self.one_b
        bj = self._bjoin
        bm = self._bmeet
        while True:
            changed = False
            for lo, hi in self._acovers:
                v = bj[t[lo]][t[hi]]
                if v != t[lo]:
                    t[lo] = v
                    changed = True
            for x, y, j in self._atriples:
                forced = bm[t[x]][t[y]]
                v = bj[t[j]][forced]
                if v != t[j]:
                    t[j] = v
                    changed = True
            if not changed:
                return tuple(t)

    def join(self, t1, t2) -> tuple:
        bj = self._bjoin
        return self.close([bj[x][y] for x, y in zip(t1, t2)])

    def meet(self, t1, t2) -> tuple:
        bm = self._bmeet
        return tuple(bm[x][y] for x, y in zip(t1, t2))

    def leq(self, t1, t2) -> bool:
        bleq = self._bleq
        return all(bleq[x][y] for x, y in zip(t1, t2))

    def mixed(self, a0: int, b0: int, a1: int, b1: int) -> tuple:
        'Mixed tensor (a0 (x) b0) u (a1 (x) b1) for a0 <= a1, b0 >= b1.'
        if not (self.a.leq[a0, a1] and self.b.leq[b1, b0]):
            raise MixedPreconditionViolated(
                'mixed tensor needs a0 <= a1 and b0 >= b1',
                witness=(a0, b0, a1, b1))
        bj = self._bjoin
        union = [bj[x][y] for x, y in zip(self.pure(a0, b0), self.pure(a1, b1))]
        closed = self.close(union)
        assert closed == tuple(union)  # the union is already a bi-ideal here
        return closed

    # --- pair-set views ---------------------------------------------------

    def mask_of(self, t) -> int:
        'Bitmask of the pair set, pair <x, y> at bit x*nb + y.'
        down = self.b.down_masks
        mask = 0
        for x, v in enumerate(t):
            mask |= down[v] << (x * self.nb)
        return mask

    def pairs_of(self, t) -> list:
        bleq = self.b.leq
        return [(x, int(y)) for x, v in enumerate(t)
                for y in np.flatnonzero(bleq[:, v])]

    def from_pairs(self, pairs):
        'Least bi-ideal containing the given pairs.'
        t = [self.zero_b] * self.na
        bj = self._bjoin
        for x, y in pairs:
            t[x] = bj[t[x]][y]
        return self.close(t)

    def element_from_mask(self, mask: int):
        '(t, None) when the mask is exactly a bi-ideal, else (None, reason).'
        nb = self.nb
        row_full = (1 << nb) - 1
        down = self.b.down_masks
        t = []
        for x in range(self.na):
            row = (mask >> (x * nb)) & row_full
            if row == 0:
                return None, f'row of element {x} misses the zero of B'
            top = 0
            for y in range(nb):
                if row >> y & 1:
                    top = self._bjoin[top][y]
            if down[top] != row:
                return None, f'row of element {x} is not an ideal of B'
            t.append(top)
        if t[self.zero_a] != self.one_b:
            return None, 'bottom row must be all of B'
        for x in range(self.na):
            for y in range(self.na):
                j = self._ajoin[x][y]
                if t[j] != self._bmeet[t[x]][t[y]]:
                    return None, f'rows at {x}, {y} break the lateral join law'
        return tuple(t), None

    def caps(self, t) -> list:
        'Maximal pairs of the bi-ideal, sorted by id.'
        out = []
        lt = self.a.lt
        bleq = self._bleq
        for x, v in enumerate(t):
            above = np.flatnonzero(lt[x, :])
            if all(not bleq[v][t[int(x2)]] for x2 in above):
                out.append((x, v))
        return sorted(out)


class TensorLattice:
    'Materialized tensor product with its bi-ideal elements.'

    def __init__(self, space: BiIdealSpace, elements, name=None):
        self.space = space
        down_size = [int(space.b.leq[:, v].sum()) for v in range(space.nb)]
        self.elements = tuple(sorted(
            elements, key=lambda t: (sum(down_size[v] for v in t), t)))
        self.index = {t: i for i, t in enumerate(self.elements)}
        m = len(self.elements)
        arr = np.array(self.elements, dtype=np.int64).reshape(m, space.na)
        leq = space.b.leq[arr[:, None, :], arr[None, :, :]].all(axis=2)
        labels = [self._cap_label(t) for t in self.elements]
        self.lattice = FiniteLattice(leq, labels=labels, name=name,
                                     validate=False)

    def _cap_label(self, t) -> str:
        sp = self.space
        return '|'.join(f'({sp.a.labels[x]},{sp.b.labels[y]})'
                        for x, y in sp.caps(t))

    def caps_of(self, i: int) -> list:
        return self.space.caps(self.elements[i])

    def mask_of(self, i: int) -> int:
        return self.space.mask_of(self.elements[i])


def _closure_elements(space: BiIdealSpace) -> list:
    'All bi-ideals: close the pure tensors under joins with pure tensors.'
    pures = {space.pure(x, y)
             for x in range(space.na) for y in range(space.nb)}
    pures.add(space.bottom)
    seen = set(pures)
    queue = list(pures)
    pures = sorted(pures)
    while queue:
        t = queue.pop()
        for p in pures:
            j = space.join(t, p)
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return sorted(seen)


def _hom_elements(space: BiIdealSpace, limit=None, validate=True) -> list:
    '''All bi-ideals as antitone assignments on the join-irreducibles of A.

    Backtracking in height order prunes non-antitone branches early, so
    the cost is proportional to the number of bi-ideals found, not to
    |B|^|J(A)|. Every nonzero x satisfies t[x] = meet of the values on
    the irreducibles below x, and under the antitone constraint that
    extension always restricts back to the assignment itself. The
    extension is sound as-is when A is distributive; for general A each
    candidate is checked against the lateral join law.
    '''
    a, b = space.a, space.b
    order = sorted(a.join_irreducible_ids,
                   key=lambda p: (int(a.heights[p]), p))
    k = len(order)
    preds = [[i for i in range(idx) if a.leq[order[i], order[idx]]]
             for idx in range(k)]
    below = [[i for i in range(k) if a.leq[order[i], x]] for x in range(a.n)]
    down_list = [np.flatnonzero(b.leq[:, v]).tolist() for v in range(b.n)]
    bm = space._bmeet
    ajoin = space._ajoin
    out = []
    assign = [0] * k

    def emit():
        t = []
        for x in range(a.n):
            if x == space.zero_a:
                t.append(space.one_b)
                continue
            v = space.one_b
            for i in below[x]:
                v = bm[v][assign[i]]
            t.append(v)
        if validate:
            for x in range(a.n):
                tx = t[x]
                for y in range(x, a.n):
                    if t[ajoin[x][y]] != bm[tx][t[y]]:
                        return
        out.append(tuple(t))
        if limit is not None and len(out) > limit:
            raise SizeLimitExceeded(
                f'bi-ideal enumeration exceeded {limit} elements')

    def walk(idx: int):
        if idx == k:
            emit()
            return
        cap = space.one_b
        for i in preds[idx]:
            cap = bm[cap][assign[i]]
        for v in down_list[cap]:
            assign[idx] = v
            walk(idx + 1)

    walk(0)
    return sorted(out)


def _needs_lateral_check(a: JoinSemilattice) -> bool:
    # antitone extension is automatically lateral-sound over a distributive A
    return not (isinstance(a, FiniteLattice) and a.is_distributive)


def count_bi_ideals(a: JoinSemilattice, b: JoinSemilattice,
                    limit: int) -> int | None:
    'Number of bi-ideals, or None once the count passes limit.'
    space = BiIdealSpace(a, b)
    try:
        return len(_hom_elements(space, limit=limit,
                                 validate=_needs_lateral_check(a)))
    except SizeLimitExceeded:
        return None


def bi_ideal_elements(a: JoinSemilattice, b: JoinSemilattice,
                      limit=None) -> tuple:
    'Elements only (no lattice build), via the map-extension route.'
    space = BiIdealSpace(a, b)
    elems = _hom_elements(space, limit=limit,
                          validate=_needs_lateral_check(a))
    return space, tuple(elems)


def tensor_product(a: JoinSemilattice, b: JoinSemilattice,
                   guard: int | None = None,
                   method: str = 'closure') -> TensorLattice:
    '''The tensor product lattice of all bi-ideals of A x B.

    The default guard caps |A|*|B| at 20; raise it explicitly (or via
    LATKIT_GUARD) for bigger inputs.
    '''
    limit = resolve_guard(guard, TENSOR_DIMENSION_GUARD)
    if a.n * b.n > limit:
        raise SizeLimitExceeded(
            f'|A|*|B| = {a.n * b.n} exceeds the tensor guard {limit}')
    space = BiIdealSpace(a, b)
    if method == 'closure':
        elements = _closure_elements(space)
    elif method == 'hom':
        elements = _hom_elements(space)
    else:
        raise ValueError(f'unknown tensor method {method!r}')
    name = None
    if a.name and b.name:
        name = f'{a.name}(x){b.name}'
    return TensorLattice(space, elements, name=name)


# --- hom route as an independently checkable construction ------------------

class HomTensor:
    '''Join-reversing maps from A- into the ideal lattice of B.

    Maps are stored by their ideal masks on all of A-, ordered pointwise
    by inclusion. eps sends a map to its bi-ideal pair mask.
    '''

    def __init__(self, a: FiniteLattice, b: FiniteLattice):
        self.a = a
        self.b = b
        self.maps = self._enumerate()

    def _enumerate(self):
        a, b = self.a, self.b
        js = list(a.join_irreducible_ids)
        ideals = list(b.down_masks)  # every ideal of a finite B is principal
        carrier = [x for x in range(a.n) if x != a.zero]
        out = []
        for combo in itertools.product(ideals, repeat=len(js)):
            assign = dict(zip(js, combo))
            phi = {}
            ok = True
            for x in carrier:
                m = None
                for p in js:
                    if a.leq[p, x]:
                        m = assign[p] if m is None else (m & assign[p])
                phi[x] = m
            for x in carrier:
                for y in carrier:
                    j = int(a.join_table[x, y])
                    if phi[j] != phi[x] & phi[y]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple(phi[x] for x in carrier))
        self.carrier = carrier
        return sorted(set(out))

    def eps_mask(self, phi) -> int:
        'Pair mask of eps(phi): the graph of phi plus the boundary axes.'
        nb = self.b.n
        mask = 0
        for x, ideal in zip(self.carrier, phi):
            mask |= ideal << (x * nb)
        row_full = (1 << nb) - 1
        mask |= row_full << (self.a.zero * nb)  # {0} x B
        zero_bit = 1 << self.b.zero
        for x in range(self.a.n):
            mask |= zero_bit << (x * nb)  # A x {0}
        return mask

    def iso_check(self, guard: int | None = None) -> bool:
        'eps is an order isomorphism onto the bi-ideal tensor product.'
        tp = tensor_product(self.a, self.b, guard=guard)
        target = {tp.mask_of(i): i for i in range(len(tp.elements))}
        masks = [self.eps_mask(phi) for phi in self.maps]
        if len(set(masks)) != len(masks) or set(masks) != set(target):
            return False
        for p1, m1 in zip(self.maps, masks):
            for p2, m2 in zip(self.maps, masks):
                pointwise = all(i1 & ~i2 == 0 for i1, i2 in zip(p1, p2))
                if pointwise != bool(tp.lattice.leq[target[m1], target[m2]]):
                    return False
        return True


def hom_tensor(a: FiniteLattice, b: FiniteLattice) -> HomTensor:
    return HomTensor(a, b)
