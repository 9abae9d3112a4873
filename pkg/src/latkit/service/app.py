'''HTTP service exposing generation, constructions, checks, and suites.

Domain errors surface as 422 with the error class name and witness;
everything else is a plain 200 with the module-native JSON payload.
'''

import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..boxprod import box_product, lattice_tensor_product, triples
from ..catalog import random_lattice
from ..congruence import (ConLattice, cong_preserving_check, con_lattice,
                          permutable)
from ..errors import LatkitError, MalformedInput
from ..jsonio import plain
from ..order import (FiniteLattice, find_isomorphism, ideal_lattice,
                     named_family, product)
from ..tensor import tensor_product
from ..transfer import (classify, condition_T, con_of_amenable_representable,
                        ji_con_bijection, spike_analysis, whitman)
from ..verify import RunConfig, run_suite
from .models import (CheckRequest, CheckResponse, GenRequest, GenResponse,
                     LatticeModel, OpRequest, OpResponse, VerifyRequest,
                     VerifyResponse)

TRIPLE_OPS = {'mL': 'mL', 'nL': 'nL', 'balanced': 'm3bracket',
              'n5bracket': 'n5bracket'}
PAIR_OPS = ('tensor', 'box', 'ltp', 'product')


def _gen(req: GenRequest) -> FiniteLattice:
    if req.kind == 'random':
        if req.size is None:
            raise MalformedInput('random generation needs a size')
        return random_lattice(req.seed, req.size)
    return named_family(req.kind, req.n)


def _one(req) -> FiniteLattice:
    return req.lattices[0].to_lattice()


def _two(req):
    if len(req.lattices) != 2:
        raise MalformedInput(f'{getattr(req, "op", getattr(req, "prop", ""))!r}'
                             ' needs two lattices')
    return req.lattices[0].to_lattice(), req.lattices[1].to_lattice()


def _op(req: OpRequest) -> OpResponse:
    t0 = time.perf_counter()
    meta = {}
    if req.op in PAIR_OPS:
        a, b = _two(req)
        if req.op == 'tensor':
            out = tensor_product(a, b, guard=req.guard).lattice
        elif req.op == 'box':
            out = box_product(a, b, guard=req.guard).lattice
        elif req.op == 'ltp':
            ltp = lattice_tensor_product(a, b, guard=req.guard)
            out = ltp.lattice
            meta['cases'] = list(ltp.cases)
        else:
            out = product(a, b)
        meta['factors'] = [a.n, b.n]
    elif req.op in TRIPLE_OPS:
        base = _one(req)
        tl = triples(base, TRIPLE_OPS[req.op])
        meta['is_lattice'] = tl.is_lattice
        if not tl.is_lattice:
            meta['witness'] = plain(tl.latticehood_witness)
        out = tl.poset
    elif req.op == 'con':
        out = con_lattice(_one(req), guard=req.guard).lattice
    elif req.op == 'dual':
        out = _one(req).dual()
    elif req.op == 'ideals':
        out = ideal_lattice(_one(req))
    else:
        raise MalformedInput(f'unknown op {req.op!r}')
    meta['elements'] = out.n
    meta['elapsed_ms'] = round((time.perf_counter() - t0) * 1000, 3)
    return OpResponse(lattice=LatticeModel.from_poset(out), meta=meta)


def _check(req: CheckRequest) -> CheckResponse:
    prop = req.prop
    if prop == 'iso':
        a, b = _two(req)
        mapping = find_isomorphism(a, b)
        return CheckResponse(verdict=mapping is not None,
                             report={'mapping': plain(mapping)})
    if prop == 'cong-preserving':
        a, b = _two(req)
        if req.mapping is None:
            raise MalformedInput('cong-preserving needs a mapping')
        ok = cong_preserving_check(a, b, req.mapping, guard=req.guard)
        return CheckResponse(verdict=ok, report={'mapping': req.mapping})
    lat = _one(req)
    if prop == 'classify':
        rep = classify(lat)
        return CheckResponse(verdict=rep.sharply_transferable,
                             report=plain(rep.to_json()))
    if prop == 'amenable':
        rep = condition_T(lat)
        return CheckResponse(verdict=rep.verdict,
                             report=plain(rep.to_json()))
    if prop == 'whitman':
        rep = whitman(lat)
        return CheckResponse(verdict=rep.verdict,
                             report=plain(rep.to_json()))
    if prop == 'spike':
        rep = spike_analysis(lat)
        return CheckResponse(verdict=rep.spike_free,
                             report=plain(rep.to_json()))
    if prop == 'permutable':
        ok, witness = permutable(lat, guard=req.guard)
        return CheckResponse(verdict=ok,
                             report={'witness': plain(witness)})
    if prop == 'representable':
        rep = con_of_amenable_representable(lat)
        return CheckResponse(verdict=rep.verdict,
                             report=plain(rep.to_json()))
    if prop == 'jicon':
        rep = ji_con_bijection(lat)
        return CheckResponse(verdict=rep.verdict,
                             report=plain(rep.to_json()))
    raise MalformedInput(f'unknown check {prop!r}')


def create_app() -> FastAPI:
    app = FastAPI(title='latkit', version='0.1.0')

    @app.exception_handler(LatkitError)
    async def domain_error(_: Request, exc: LatkitError):
        payload = {'error': type(exc).__name__, 'message': str(exc),
                   'witness': plain(getattr(exc, 'witness', None))}
        return JSONResponse(status_code=422, content=payload)

    @app.get('/health')
    async def health():
        return {'status': 'ok', 'service': 'latkit', 'version': '0.1.0'}

    @app.post('/gen', response_model=GenResponse)
    async def gen(req: GenRequest):
        return GenResponse(lattice=LatticeModel.from_poset(_gen(req)))

    @app.post('/op', response_model=OpResponse)
    async def op(req: OpRequest):
        return _op(req)

    @app.post('/check', response_model=CheckResponse)
    async def check(req: CheckRequest):
        return _check(req)

    @app.post('/verify', response_model=VerifyResponse)
    async def verify(req: VerifyRequest):
        cfg = RunConfig(seed=req.seed, max_size=req.max_size,
                        samples=req.samples, guard=req.guard)
        records = run_suite(req.suite, cfg, workers=req.workers)
        return VerifyResponse(records=plain(records))

    return app
