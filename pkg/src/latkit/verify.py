'''Theorem-verification suites over exhaustive and sampled instances.

Each suite runs one isomorphism or preservation statement across the
full small-lattice catalog plus seeded random instances, and returns
JSON-ready records: one per instance, sorted by instance key, with a
trailing aggregate. Identical configurations produce identical
records; anything nondeterministic (wall-clock, worker scheduling)
stays out of them. A failing instance carries a counterexample bundle
with the inputs in lattice JSON form.
'''

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .boxprod import (BoxdotElement, BoxSpace, box_closure, box_product,
                      embedding_check, lattice_tensor_product, mu_iso,
                      triple_iso_check)
from .catalog import all_lattices, random_lattices
from .congruence import (glq_isomorphism_check, is_sub_tensor_product,
                         permutable)
from .errors import LatkitError
from .jsonio import lattice_to_json
from .order import find_isomorphism
from .tensor import hom_tensor

SUITE_IDS = ('glq-iso', 'ltp-iso', 'box-closure', 'm3n5-ltp', 'dual-ltp',
             'capped-subtensor', 'eps-hom', 'diag-cpe', 'perm-pres')

EXHAUSTIVE_SIZE_CAP = 6


@dataclass(frozen=True)
class RunConfig:
    'Seeded, size-guarded parameters; equal configs give equal reports.'

    seed: int = 0
    max_size: int = 5
    samples: int = 20
    guard: int | None = None

    def to_json(self) -> dict:
        return {'seed': self.seed, 'max_size': self.max_size,
                'samples': self.samples, 'guard': self.guard}


def _exhaustive(cfg: RunConfig):
    return all_lattices(min(cfg.max_size, EXHAUSTIVE_SIZE_CAP))


def _singles(cfg: RunConfig):
    return list(_exhaustive(cfg)) + list(
        random_lattices(cfg.seed, cfg.samples, cfg.max_size))


def _pairs(cfg: RunConfig):
    ex = _exhaustive(cfg)
    pairs = [(a, b) for a in ex for b in ex]
    rnd = random_lattices(cfg.seed, 2 * cfg.samples, cfg.max_size)
    pairs.extend(zip(rnd[0::2], rnd[1::2]))
    return pairs


def _pair_guard(cfg: RunConfig, a, b) -> int:
    return cfg.guard if cfg.guard is not None else a.n * b.n


def _bundle(report=None, **lattices) -> dict:
    out = {k: lattice_to_json(v) for k, v in lattices.items()}
    if report is not None:
        out['report'] = report
    return out


def _suite_glq_iso(cfg: RunConfig):
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            rep = glq_isomorphism_check(a, b, guard=cfg.guard,
                                        seed=cfg.seed)
            rec = {'verdict': rep.verdict, 'route': rep.route,
                   'sizes': rep.sizes}
            if not rep.verdict:
                rec['counterexample'] = _bundle(rep.to_json(), a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _suite_ltp_iso(cfg: RunConfig):
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            rep = mu_iso(a, b, guard=_pair_guard(cfg, a, b), seed=cfg.seed)
            ok = (rep.verdict and rep.formula_ii and rep.formula_iii
                  and rep.dual_consistent)
            rec = {'verdict': ok, 'route': rep.main.route,
                   'sizes': rep.main.sizes}
            if not ok:
                rec['counterexample'] = _bundle(rep.to_json(), a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _closure_shapes():
    return [(m, n) for m in (1, 2, 3) for n in (0, 1, 2) if m + n <= 3]


def _suite_box_closure(cfg: RunConfig):
    'Closure formula against the intersection of all containing elements.'
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            space = BoxSpace(a, b)
            lat = box_product(a, b, guard=_pair_guard(cfg, a, b),
                              space=space)
            coords = [(x, y) for x in range(a.n) for y in range(b.n)]
            checked = 0
            bad = None
            for m, n in _closure_shapes():
                for bt in combinations_with_replacement(coords, m):
                    for ct in combinations_with_replacement(coords, n):
                        h = BoxdotElement.from_terms(space, bt, ct)
                        got = box_closure(h).extent
                        want = space.full
                        for mask in lat.masks:
                            if mask | h.extent == mask:
                                want &= mask
                        checked += 1
                        if got != want:
                            bad = h.to_json()
                            break
                    if bad:
                        break
                if bad:
                    break
            rec = {'verdict': bad is None, 'checked': checked}
            if bad is not None:
                rec['counterexample'] = _bundle({'element': bad}, a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _suite_m3n5_ltp(cfg: RunConfig):
    for lat in _singles(cfg):
        for which in ('m3', 'n5'):
            def job(lat=lat, which=which):
                rep = triple_iso_check(lat, which, guard=cfg.guard)
                rec = {'verdict': rep.verdict, 'sizes': rep.sizes}
                if not rep.verdict:
                    rec['counterexample'] = _bundle(rep.to_json(), base=lat)
                return rec
            yield f'{which}:{lat.name}', job


def _suite_dual_ltp(cfg: RunConfig):
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            guard = _pair_guard(cfg, a, b)
            ltp = lattice_tensor_product(a, b, guard=guard)
            dual_box = box_product(a.dual(), b.dual(), guard=guard)
            ok = find_isomorphism(ltp.lattice.dual(),
                                  dual_box.lattice) is not None
            rec = {'verdict': ok,
                   'sizes': {'ltp': ltp.lattice.n,
                             'box_of_duals': dual_box.lattice.n}}
            if not ok:
                rec['counterexample'] = _bundle(a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _suite_capped_subtensor(cfg: RunConfig):
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            guard = _pair_guard(cfg, a, b)
            ltp = lattice_tensor_product(a, b, guard=guard)
            rep = is_sub_tensor_product(a, b, ltp.member_masks,
                                        guard=guard)
            ok = rep.verdict and rep.capped
            rec = {'verdict': ok, 'members': len(ltp.member_masks)}
            if not ok:
                rec['counterexample'] = _bundle(rep.to_json(), a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _suite_eps_hom(cfg: RunConfig):
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            ht = hom_tensor(a, b)
            ok = ht.iso_check(guard=cfg.guard)
            rec = {'verdict': ok, 'maps': len(ht.maps)}
            if not ok:
                rec['counterexample'] = _bundle(a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


def _suite_diag_cpe(cfg: RunConfig):
    for lat in _singles(cfg):
        def job(lat=lat):
            rep = embedding_check(None, lat, 'diagonal', guard=cfg.guard)
            rec = {'verdict': rep.verdict, 'target': rep.target}
            if not rep.verdict:
                rec['counterexample'] = _bundle(rep.to_json(), base=lat)
            return rec
        yield lat.name, job


def _suite_perm_pres(cfg: RunConfig):
    'Both factors permutable forces the confined ideal to be permutable.'
    for a, b in _pairs(cfg):
        def job(a=a, b=b):
            ok_a, _ = permutable(a, guard=cfg.guard)
            ok_b, _ = permutable(b, guard=cfg.guard)
            if not (ok_a and ok_b):
                return None
            ltp = lattice_tensor_product(a, b,
                                         guard=_pair_guard(cfg, a, b))
            ok, witness = permutable(ltp.lattice, guard=cfg.guard)
            rec = {'verdict': ok, 'ltp': ltp.lattice.n}
            if not ok:
                rec['counterexample'] = _bundle({'witness': witness},
                                                a=a, b=b)
            return rec
        yield f'{a.name}|{b.name}', job


_SUITES = {'glq-iso': _suite_glq_iso,
           'ltp-iso': _suite_ltp_iso,
           'box-closure': _suite_box_closure,
           'm3n5-ltp': _suite_m3n5_ltp,
           'dual-ltp': _suite_dual_ltp,
           'capped-subtensor': _suite_capped_subtensor,
           'eps-hom': _suite_eps_hom,
           'diag-cpe': _suite_diag_cpe,
           'perm-pres': _suite_perm_pres}


def _worker_count() -> int:
    raw = os.environ.get('LATKIT_WORKERS', '1')
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(suite_id: str, config: RunConfig | None = None,
              workers: int | None = None) -> list:
    '''One suite as a list of records, instance order canonicalized.

    The last record is the aggregate. Instances are sharded across
    worker threads when workers (or LATKIT_WORKERS) exceeds one;
    records are sorted by instance key before return, so the report
    does not depend on scheduling. A suite may decline instances that
    fail its hypothesis; those do not appear as records.
    '''
    if suite_id not in _SUITES:
        raise LatkitError(f'unknown suite {suite_id!r}; '
                          f'choose from {", ".join(SUITE_IDS)}')
    cfg = config or RunConfig()
    if workers is None:
        workers = _worker_count()
    jobs = list(_SUITES[suite_id](cfg))

    def execute(kv):
        key, thunk = kv
        return key, thunk()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(execute, jobs))
    else:
        results = [execute(kv) for kv in jobs]
    records = []
    failures = 0
    kept = 0
    for key, rec in sorted(results, key=lambda kv: kv[0]):
        if rec is None:
            continue
        kept += 1
        out = {'suite': suite_id, 'instance': key}
        out.update(rec)
        records.append(out)
        if not rec['verdict']:
            failures += 1
    records.append({'suite': suite_id, 'aggregate': True,
                    'config': cfg.to_json(), 'instances': kept,
                    'failures': failures, 'verdict': failures == 0})
    return records
