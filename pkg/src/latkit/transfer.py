'''Decision procedures for structural conditions on finite lattices.

Implements minimal pairs of a join-semilattice, the linear-ordering
condition on join-irreducibles decided through a constraint digraph,
the Whitman quadruple condition, the combined classification record
(sharp transferability and amenability), spike analysis of posets,
representability of a distributive lattice as the congruence lattice
of an amenable lattice, and the bijection test between the
join-irreducibles of a lattice and those of its congruence lattice.
'''

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .congruence import join_irreducible_congruences, principal_congruence
from .errors import NotDistributive
from .order import FiniteLattice, FinitePoset, JoinSemilattice


def _as_join_semilattice(s) -> JoinSemilattice:
    if isinstance(s, JoinSemilattice):
        return s
    return JoinSemilattice(s.leq, labels=s.labels, name=s.name)


def dominated(leq: np.ndarray, xs, ys) -> bool:
    'Every member of xs lies below some member of ys.'
    return all(any(leq[x, y] for y in ys) for x in xs)


@dataclass(frozen=True)
class MinimalPair:
    '''A join-irreducible forced under the join of a support set.

    The dependent element lies below the join of the support, is not a
    member of it, and no dominated replacement set with the same reach
    can drop any support member.
    '''

    dependent: int
    support: tuple

    def to_json(self):
        return {'dependent': self.dependent, 'support': list(self.support)}


def _support_is_minimal(s: JoinSemilattice, candidates, p, members) -> bool:
    # every dominated set whose join reaches p must contain all of members
    member_set = set(members)
    leq = s.leq
    for size in range(1, len(candidates) + 1):
        for trial in combinations(candidates, size):
            if member_set.issubset(trial):
                continue
            if not dominated(leq, trial, members):
                continue
            if leq[p, s.join_of(trial)]:
                return False
    return True


def minimal_pairs(s) -> list:
    'All minimal pairs of a finite join-semilattice, by exhaustive scan.'
    s = _as_join_semilattice(s)
    js = sorted(s.join_irreducible_ids)
    leq = s.leq
    out = []
    for p in js:
        others = [j for j in js if j != p]
        for size in range(2, len(others) + 1):
            for members in combinations(others, size):
                if not leq[p, s.join_of(members)]:
                    continue
                if _support_is_minimal(s, js, p, members):
                    out.append(MinimalPair(p, members))
    return out


@dataclass
class ConditionTReport:
    '''Outcome of the linear-ordering condition on join-irreducibles.

    When the constraint digraph (dependent before every support member,
    over all minimal pairs) is acyclic, order carries a witnessing
    arrangement; otherwise cycle lists elements each of which is
    constrained to precede the next, wrapping around.
    '''

    verdict: bool
    order: tuple | None = None
    cycle: tuple | None = None
    pairs: list = field(default_factory=list)

    def to_json(self):
        doc = {'verdict': self.verdict,
               'pairs': [p.to_json() for p in self.pairs]}
        if self.order is not None:
            doc['order'] = list(self.order)
        if self.cycle is not None:
            doc['cycle'] = list(self.cycle)
        return doc


def _extract_cycle(nodes, succ) -> tuple:
    # walk predecessors inside the residue; a repeat closes a cycle
    residue = set(nodes)
    preds = {v: sorted(u for u in residue if v in succ[u]) for v in residue}
    path = [min(residue)]
    seen = {path[0]: 0}
    while True:
        nxt = preds[path[-1]][0]
        if nxt in seen:
            chain = path[seen[nxt]:]
            return tuple(reversed(chain))
        seen[nxt] = len(path)
        path.append(nxt)


def condition_T(s) -> ConditionTReport:
    'Decide whether some linear order of the join-irreducibles works.'
    s = _as_join_semilattice(s)
    pairs = minimal_pairs(s)
    nodes = sorted(s.join_irreducible_ids)
    succ = {v: set() for v in nodes}
    for pair in pairs:
        succ[pair.dependent].update(pair.support)
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for w in succ[v]:
            indeg[w] += 1
    order = []
    ready = sorted(v for v in nodes if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        inserted = False
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                inserted = True
        if inserted:
            ready.sort()
    if len(order) == len(nodes):
        return ConditionTReport(True, order=tuple(order), pairs=pairs)
    leftover = [v for v in nodes if indeg[v] > 0]
    cycle = _extract_cycle(leftover, succ)
    return ConditionTReport(False, cycle=cycle, pairs=pairs)


@dataclass
class WhitmanReport:
    '''Outcome of the quadruple condition on a lattice.

    A failing witness (x, y, u, v) has the meet of x and y below the
    join of u and v while none of the four lies in that interval.
    '''

    verdict: bool
    witness: tuple | None = None

    def to_json(self):
        doc = {'verdict': self.verdict}
        if self.witness is not None:
            doc['witness'] = list(self.witness)
        return doc


def whitman(lat: FiniteLattice) -> WhitmanReport:
    'Exhaustive quadruple scan; the least failing witness is reported.'
    leq = lat.leq
    jt = lat.join_table
    mt = lat.meet_table
    # x and y always sit above the meet, u and v always sit below the
    # join, so membership in the interval reduces to one comparison each
    for x in range(lat.n):
        for y in range(lat.n):
            m = mt[x, y]
            bad = (leq[m, jt] & ~leq[x, jt] & ~leq[y, jt]
                   & ~leq[m, :][:, None] & ~leq[m, :][None, :])
            if bad.any():
                u, v = (int(w) for w in np.argwhere(bad)[0])
                return WhitmanReport(False, witness=(x, y, u, v))
    return WhitmanReport(True)


@dataclass
class ClassifyReport:
    'Transferability classification of a finite lattice.'

    t_join: ConditionTReport
    t_meet: ConditionTReport
    whitman: WhitmanReport

    @property
    def sharply_transferable(self) -> bool:
        return (self.t_join.verdict and self.t_meet.verdict
                and self.whitman.verdict)

    @property
    def amenable(self) -> bool:
        return self.t_join.verdict

    def to_json(self):
        return {'T_join': self.t_join.verdict,
                'T_meet': self.t_meet.verdict,
                'W': self.whitman.verdict,
                'sharply_transferable': self.sharply_transferable,
                'amenable': self.amenable,
                'witnesses': {'T_join': self.t_join.to_json(),
                              'T_meet': self.t_meet.to_json(),
                              'W': self.whitman.to_json()}}


def classify(lat: FiniteLattice) -> ClassifyReport:
    '''Classify a finite lattice.

    The join side of the ordering condition doubles as the amenability
    verdict; together with its dual and the quadruple condition it
    decides sharp transferability.
    '''
    return ClassifyReport(t_join=condition_T(lat),
                          t_meet=condition_T(lat.dual()),
                          whitman=whitman(lat))


@dataclass
class SpikeReport:
    'Spikes of a finite poset: see spike_analysis.'

    spikes: list
    spike_free: bool

    def to_json(self):
        return {'spikes': [list(s) for s in self.spikes],
                'spike_free': self.spike_free}


def spike_analysis(poset: FinitePoset) -> SpikeReport:
    '''Find all spikes of a finite poset.

    A spike is a covering pair whose top is maximal and is the only
    maximal element above the bottom.
    '''
    leq = poset.leq
    maximal = poset.maximal_ids
    spikes = []
    for b in maximal:
        for a in np.flatnonzero(poset.covers[:, b]):
            a = int(a)
            above = [m for m in maximal if leq[a, m]]
            if above == [b]:
                spikes.append((a, b))
    spikes.sort()
    return SpikeReport(spikes=spikes, spike_free=not spikes)


@dataclass
class RepresentabilityReport:
    'Whether a distributive lattice is the congruence lattice of an amenable one.'

    verdict: bool
    ji_ids: tuple
    spikes: list

    def to_json(self):
        return {'verdict': self.verdict,
                'join_irreducibles': list(self.ji_ids),
                'spikes': [list(s) for s in self.spikes]}


def con_of_amenable_representable(d: FiniteLattice) -> RepresentabilityReport:
    '''Decide representability through the join-irreducible subposet.

    The verdict is true exactly when that subposet has no spikes.
    Raises NotDistributive on a non-distributive input.
    '''
    witness = d.distributive_witness
    if witness is not None:
        raise NotDistributive(
            'representability is decided for distributive lattices only',
            witness=witness)
    ids = d.join_irreducible_ids
    report = spike_analysis(d.join_irreducible_poset())
    spikes = [(ids[a], ids[b]) for a, b in report.spikes]
    return RepresentabilityReport(verdict=report.spike_free,
                                  ji_ids=tuple(ids), spikes=spikes)


@dataclass
class JiConReport:
    '''Join-irreducibles of a lattice against those of its congruence lattice.

    assignments maps each join-irreducible element to the principal
    congruence collapsing it onto its unique lower cover; the verdict
    states that this map is a bijection onto the join-irreducible
    congruences.
    '''

    verdict: bool
    assignments: list
    ji_count: int
    ji_con_count: int
    reason: str | None = None

    def to_json(self):
        doc = {'verdict': self.verdict,
               'ji_count': self.ji_count,
               'ji_con_count': self.ji_con_count,
               'map': [{'element': a,
                        'blocks': [list(b) for b in theta.blocks()]}
                       for a, theta in self.assignments]}
        if self.reason is not None:
            doc['reason'] = self.reason
        return doc


def ji_con_bijection(lat: FiniteLattice) -> JiConReport:
    'Test whether collapsing each join-irreducible onto its cover is a bijection.'
    jis = sorted(lat.join_irreducible_ids)
    targets, _ = join_irreducible_congruences(lat)
    target_keys = {theta.key for theta in targets}
    assignments = []
    for a in jis:
        theta = principal_congruence(lat, lat.lower_cover_of(a), a)
        assignments.append((a, theta))
    image_keys = {theta.key for _, theta in assignments}
    reason = None
    if not all(theta.key in target_keys for _, theta in assignments):
        reason = 'image leaves the join-irreducible congruences'
    elif len(image_keys) < len(assignments):
        reason = 'not injective'
    elif len(image_keys) < len(target_keys):
        reason = 'not surjective'
    return JiConReport(verdict=reason is None, assignments=assignments,
                       ji_count=len(jis), ji_con_count=len(targets),
                       reason=reason)


@dataclass
class BatchTJoinReport:
    '''Partial amenability evidence from generated sublattices.

    Checks the join-side ordering condition on every sublattice
    generated by at most max_generators elements. This is a partial
    check by construction, never a verdict about the whole lattice.
    '''

    partial: bool
    max_generators: int
    sublattices_checked: int
    all_satisfy: bool
    failing_generators: tuple | None = None

    def to_json(self):
        doc = {'partial': True,
               'max_generators': self.max_generators,
               'sublattices_checked': self.sublattices_checked,
               'all_satisfy': self.all_satisfy}
        if self.failing_generators is not None:
            doc['failing_generators'] = list(self.failing_generators)
        return doc


def _generated_sublattice(lat: FiniteLattice, seed) -> frozenset:
    jt, mt = lat.join_table, lat.meet_table
    members = set(seed)
    while True:
        fresh = set()
        items = sorted(members)
        for x in items:
            for y in items:
                fresh.add(int(jt[x, y]))
                fresh.add(int(mt[x, y]))
        if fresh <= members:
            return frozenset(members)
        members |= fresh


def t_join_batch_check(lat: FiniteLattice, max_generators: int) -> BatchTJoinReport:
    'Run the join-side ordering condition on all small generated sublattices.'
    if max_generators < 1:
        raise ValueError('max_generators must be at least 1')
    seen = set()
    checked = 0
    for size in range(1, max_generators + 1):
        for seed in combinations(range(lat.n), size):
            members = _generated_sublattice(lat, seed)
            if members in seen:
                continue
            seen.add(members)
            ids = sorted(members)
            sub = FiniteLattice(lat.leq[np.ix_(ids, ids)],
                                labels=[lat.labels[i] for i in ids],
                                validate=False)
            checked += 1
            if not condition_T(sub).verdict:
                return BatchTJoinReport(partial=True,
                                        max_generators=max_generators,
                                        sublattices_checked=checked,
                                        all_satisfy=False,
                                        failing_generators=seed)
    return BatchTJoinReport(partial=True, max_generators=max_generators,
                            sublattices_checked=checked, all_satisfy=True)
