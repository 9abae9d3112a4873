'''Size guard resolution.

Enumerating constructions can blow up combinatorially, so every
enumerating operation takes an optional guard. Resolution order:
explicit argument, then the LATKIT_GUARD environment variable, then the
operation default.
'''

from __future__ import annotations

import os

GUARD_ENV = 'LATKIT_GUARD'


def resolve_guard(explicit: int | None, default: int) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(GUARD_ENV)
    if env is not None and env.strip():
        return int(env)
    return default
