'''JSON forms for lattices, congruences, bi-ideals, and verdicts.

One lattice format everywhere: {"name"?, "elements": [labels],
"covers": [[lower, upper]]}. Serialization is canonical (sorted keys,
no whitespace), so identical inputs give byte-identical output.
'''

import json

import numpy as np

from .errors import MalformedInput
from .order import FiniteLattice, FinitePoset
from .congruence import Congruence, congruence_from_blocks


def dumps(obj) -> str:
    'Canonical JSON: sorted keys, compact separators, no numpy types.'
    return json.dumps(plain(obj), sort_keys=True, separators=(',', ':'))


def plain(obj):
    'Recursively strip numpy scalars and arrays down to JSON types.'
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return obj


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f'missing key {key!r}')
    value = obj[key]
    if not isinstance(value, kind):
        raise MalformedInput(f'key {key!r} must be {kind.__name__}')
    return value


def lattice_to_json(lat: FinitePoset) -> dict:
    cover_pairs = sorted((int(i), int(j))
                         for i, j in np.argwhere(lat.covers))
    out = {'elements': list(lat.labels),
           'covers': [list(p) for p in cover_pairs]}
    if lat.name:
        out['name'] = lat.name
    return out


def lattice_from_json(obj) -> FiniteLattice:
    'Rebuild a lattice; raises when the order is not a lattice.'
    elements = _require(obj, 'elements', list)
    covers = _require(obj, 'covers', list)
    for pair in covers:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)):
            raise MalformedInput(f'bad cover pair {pair!r}')
        if not all(0 <= v < len(elements) for v in pair):
            raise MalformedInput(f'cover pair {pair!r} out of range')
    name = obj.get('name')
    if name is not None and not isinstance(name, str):
        raise MalformedInput('name must be a string')
    return FiniteLattice.from_covers(
        [str(s) for s in elements], [tuple(p) for p in covers], name=name)


def congruence_to_json(c: Congruence) -> dict:
    return {'blocks': [list(map(int, b)) for b in c.blocks()]}


def congruence_from_json(lattice: FiniteLattice, obj) -> Congruence:
    blocks = _require(obj, 'blocks', list)
    return congruence_from_blocks(lattice, blocks)


def bi_ideal_to_json(space, t) -> dict:
    'Pairs above the bottom set; the bottom is implied.'
    za, zb = space.a.zero, space.b.zero
    pairs = [[x, y] for x, y in space.pairs_of(t)
             if x != za and y != zb]
    return {'pairs': pairs}


def bi_ideal_from_json(space, obj):
    pairs = _require(obj, 'pairs', list)
    for pair in pairs:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)):
            raise MalformedInput(f'bad pair {pair!r}')
        x, y = pair
        if not (0 <= x < space.na and 0 <= y < space.nb):
            raise MalformedInput(f'pair {pair!r} out of range')
    t = space.from_pairs([tuple(p) for p in pairs])
    listed = 0
    for x, y in pairs:
        listed |= 1 << (x * space.nb + y)
    bottom = space.mask_of(space.pure(space.a.zero, space.b.zero))
    if space.mask_of(t) != listed | bottom:
        raise MalformedInput('pairs do not describe a bi-ideal')
    return t


def verdict_json(verdict: bool, witness=None, **extra) -> dict:
    out = {'verdict': bool(verdict)}
    if witness is not None:
        out['witness'] = witness
    out.update(extra)
    return out
