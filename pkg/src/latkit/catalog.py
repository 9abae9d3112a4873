'''Small-lattice catalog and seeded random lattice generation.

Every finite lattice is isomorphic to an intersection-closed family of
subsets of its join-irreducibles (map x to the join-irreducibles below
x), ordered by inclusion. Enumerating intersection-closed families over
ground sets of size up to max_size-1 therefore produces every lattice
with at most max_size elements; duplicates are removed up to
isomorphism. Random lattices come from the same representation with
randomly chosen generating subsets.
'''

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .errors import SizeLimitExceeded
from .order import FiniteLattice, find_isomorphism


def _family_lattice(members: tuple, ground: int, name=None) -> FiniteLattice:
    'Lattice of an intersection-closed family of bitmasks ordered by inclusion.'
    ms = sorted(members)
    n = len(ms)
    leq = np.empty((n, n), dtype=bool)
    for i, mi in enumerate(ms):
        for j, mj in enumerate(ms):
            leq[i, j] = (mi & ~mj) == 0
    labels = ['{' + ','.join(str(b) for b in range(ground) if m >> b & 1) + '}'
              for m in ms]
    return FiniteLattice(leq, labels=labels, name=name, validate=False)


def _intersection_closed(members: tuple) -> bool:
    got = set(members)
    for a, b in itertools.combinations(members, 2):
        if a & b not in got:
            return False
    return True


def _close_family(members, full: int) -> tuple:
    got = {full}
    queue = [full]
    for m in members:
        if m not in got:
            got.add(m)
            queue.append(m)
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for b in list(got):
            c = a & b
            if c not in got:
                got.add(c)
                queue.append(c)
    return tuple(sorted(got))


@lru_cache(maxsize=None)
def all_lattices(max_size: int) -> tuple:
    'All lattices with 1..max_size elements, one per isomorphism class.'
    if max_size < 1:
        return ()
    if max_size > 6:
        raise SizeLimitExceeded(
            'exhaustive catalog is supported up to size 6; '
            'use random sampling beyond that')
    reps = []
    buckets = {}
    for ground in range(0, max_size):
        full = (1 << ground) - 1
        proper = [m for m in range(full + 1) if m != full]
        for extra in range(0, max_size):
            for chosen in itertools.combinations(proper, extra):
                members = chosen + (full,)
                if not _intersection_closed(members):
                    continue
                lat = _family_lattice(members, ground)
                key = lat.iso_invariant()
                group = buckets.setdefault(key, [])
                if any(find_isomorphism(lat, seen) is not None for seen in group):
                    continue
                group.append(lat)
                reps.append(lat)
    reps.sort(key=lambda l: (l.n, len(l.cover_pairs), l.iso_invariant()[1]))
    out = []
    for k, lat in enumerate(reps):
        named = FiniteLattice(lat.leq, labels=lat.labels,
                              name=f'K{lat.n}.{sum(1 for r in out if r.n == lat.n)}',
                              validate=False)
        out.append(named)
    return tuple(out)


def random_lattice(seed: int, max_size: int, min_size: int = 2,
                   attempts: int = 10000) -> FiniteLattice:
    'Deterministic random lattice with min_size..max_size elements.'
    rng = random.Random(seed)
    return _random_from(rng, max_size, min_size, attempts,
                        name=f'R{seed}')


def random_lattices(seed: int, count: int, max_size: int,
                    min_size: int = 2) -> list:
    'A reproducible stream of random lattices.'
    rng = random.Random(seed)
    return [_random_from(rng, max_size, min_size, 10000, name=f'R{seed}.{k}')
            for k in range(count)]


def _random_from(rng: random.Random, max_size: int, min_size: int,
                 attempts: int, name=None) -> FiniteLattice:
    if max_size < max(min_size, 1):
        raise SizeLimitExceeded('random lattice size bounds are inconsistent')
    for _ in range(attempts):
        ground = rng.randint(1, max(1, max_size - 1))
        full = (1 << ground) - 1
        n_gen = rng.randint(1, max(1, ground + 1))
        gens = [rng.randint(0, full) for _ in range(n_gen)]
        members = _close_family(gens, full)
        if min_size <= len(members) <= max_size:
            return _family_lattice(members, ground, name=name)
    raise SizeLimitExceeded('random lattice generation failed to hit size bounds')
