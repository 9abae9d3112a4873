'''Command line client for the lattice service.

Every command is a thin HTTP client: by default requests run against
an in-process instance of the service (no socket), and --url or
LATKIT_URL points them at a remote one instead. Constructions print
lattice JSON on stdout so commands compose through pipes; metadata and
timings go to stderr. Exit codes: 0 true/ok, 1 false verdict or
failing suite, 2 errors.
'''

import asyncio
import json
import sys

import click
import httpx

from .jsonio import dumps
from .verify import SUITE_IDS

OP_NAMES = ('tensor', 'box', 'ltp', 'mL', 'nL', 'balanced', 'n5bracket',
            'con', 'dual', 'product', 'ideals')
CHECK_NAMES = ('classify', 'whitman', 'spike', 'permutable', 'iso',
               'cong-preserving', 'amenable', 'representable', 'jicon')
PAIR_OPS = ('tensor', 'box', 'ltp', 'product')


class ServiceClient:
    'POSTs either to a remote base URL or to the in-process app.'

    def __init__(self, url: str | None = None):
        self.url = url

    def request(self, method: str, path: str, payload=None):
        if self.url:
            with httpx.Client(base_url=self.url, timeout=600.0) as client:
                resp = client.request(method, path, json=payload)
            return resp.status_code, resp.json()

        from .service import create_app

        async def go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(transport=transport,
                                         base_url='http://latkit.local',
                                         timeout=None) as client:
                return await client.request(method, path, json=payload)

        resp = asyncio.run(go())
        return resp.status_code, resp.json()


def _fail(data) -> 'NoReturn':
    sys.stderr.write(dumps(data) + '\n')
    sys.exit(2)


def _call(ctx, path: str, payload: dict):
    client: ServiceClient = ctx.obj['client']
    try:
        status, data = client.request('POST', path, payload)
    except (httpx.HTTPError, OSError) as exc:
        _fail({'error': type(exc).__name__, 'message': str(exc)})
    if status != 200:
        _fail(data if isinstance(data, dict) else {'error': 'http',
                                                   'message': str(data)})
    return data


def _emit(ctx, text: str):
    out = ctx.obj['output']
    if out in (None, '-'):
        sys.stdout.write(text + '\n')
    else:
        with open(out, 'w', encoding='utf-8') as fh:
            fh.write(text + '\n')


def _read_json(path: str) -> dict:
    try:
        raw = sys.stdin.read() if path == '-' else open(
            path, encoding='utf-8').read()
        return json.loads(raw)
    except OSError as exc:
        _fail({'error': 'OSError', 'message': str(exc)})
    except json.JSONDecodeError as exc:
        _fail({'error': 'JSONDecodeError',
               'message': f'{path}: {exc}'})


def _lattice_payloads(inputs) -> list:
    if sum(1 for p in inputs if p == '-') > 1:
        _fail({'error': 'MalformedInput',
               'message': 'standard input can appear only once'})
    return [_read_json(p) for p in inputs]


@click.group()
@click.option('--seed', type=int, default=0, show_default=True,
              help='Seed for random generation and sampling.')
@click.option('--max-size', type=int, default=5, show_default=True,
              help='Largest lattice size for verification instances.')
@click.option('--samples', type=int, default=20, show_default=True,
              help='Seeded random instances per verification suite.')
@click.option('--guard', type=int, default=None,
              help='Override size guards (LATKIT_GUARD also works).')
@click.option('--output', default='-', show_default=True,
              help='Write stdout payload to a file instead.')
@click.option('--url', default=None, envvar='LATKIT_URL',
              help='Remote service base URL; default runs in process.')
@click.pass_context
def main(ctx, seed, max_size, samples, guard, output, url):
    'Finite-lattice constructions, checks, and theorem suites.'
    ctx.obj = {'seed': seed, 'max_size': max_size, 'samples': samples,
               'guard': guard, 'output': output,
               'client': ServiceClient(url)}


@main.command()
@click.argument('kind')
@click.option('--n', type=int, default=None,
              help='Family parameter (Bn, Cn).')
@click.option('--size', type=int, default=None,
              help='Element count bound for random generation.')
@click.pass_context
def gen(ctx, kind, n, size):
    'Emit a named family (M3, N5, W7, Bn, Cn) or a random lattice.'
    data = _call(ctx, '/gen', {'kind': kind, 'n': n, 'size': size,
                               'seed': ctx.obj['seed']})
    _emit(ctx, dumps(data['lattice']))


@main.command()
@click.argument('op_name', metavar='OP',
                type=click.Choice(OP_NAMES))
@click.argument('inputs', nargs=-1, required=True)
@click.pass_context
def op(ctx, op_name, inputs):
    'Run a construction; lattice JSON out, metadata on stderr.'
    expected = 2 if op_name in PAIR_OPS else 1
    if len(inputs) != expected:
        _fail({'error': 'MalformedInput',
               'message': f'{op_name} takes {expected} input(s)'})
    data = _call(ctx, '/op', {'op': op_name,
                              'lattices': _lattice_payloads(inputs),
                              'guard': ctx.obj['guard']})
    sys.stderr.write(dumps(data['meta']) + '\n')
    _emit(ctx, dumps(data['lattice']))


@main.command()
@click.argument('prop', metavar='PROPERTY',
                type=click.Choice(CHECK_NAMES))
@click.argument('inputs', nargs=-1, required=True)
@click.option('--mapping', default=None,
              help='JSON id list for cong-preserving (small to big).')
@click.pass_context
def check(ctx, prop, inputs, mapping):
    'Decide a property; exit 0 when true, 1 when false, 2 on error.'
    expected = 2 if prop in ('iso', 'cong-preserving') else 1
    if len(inputs) != expected:
        _fail({'error': 'MalformedInput',
               'message': f'{prop} takes {expected} input(s)'})
    ids = None
    if mapping is not None:
        try:
            ids = [int(v) for v in json.loads(mapping)]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            _fail({'error': 'MalformedInput',
                   'message': f'bad mapping: {exc}'})
    data = _call(ctx, '/check', {'prop': prop,
                                 'lattices': _lattice_payloads(inputs),
                                 'mapping': ids,
                                 'guard': ctx.obj['guard']})
    _emit(ctx, dumps(data))
    sys.exit(0 if data['verdict'] else 1)


@main.command()
@click.argument('suite', type=click.Choice(SUITE_IDS + ('all',)))
@click.option('--workers', type=int, default=None,
              help='Shard instances across this many threads.')
@click.pass_context
def verify(ctx, suite, workers):
    'Run theorem suites; JSON-lines records, aggregate last per suite.'
    import time
    suites = SUITE_IDS if suite == 'all' else (suite,)
    lines = []
    all_ok = True
    for sid in suites:
        t0 = time.perf_counter()
        data = _call(ctx, '/verify', {'suite': sid,
                                      'seed': ctx.obj['seed'],
                                      'max_size': ctx.obj['max_size'],
                                      'samples': ctx.obj['samples'],
                                      'guard': ctx.obj['guard'],
                                      'workers': workers})
        records = data['records']
        lines.extend(dumps(r) for r in records)
        agg = records[-1]
        all_ok = all_ok and agg['verdict']
        sys.stderr.write(f'{sid}: {agg["instances"]} instances, '
                         f'{agg["failures"]} failures, '
                         f'{time.perf_counter() - t0:.1f}s\n')
    _emit(ctx, '\n'.join(lines))
    sys.exit(0 if all_ok else 1)


@main.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', type=int, default=8000, show_default=True)
def serve(host, port):
    'Run the HTTP service.'
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == '__main__':
    main()
