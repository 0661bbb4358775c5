from functools import lru_cache

import mpmath


@lru_cache(maxsize=None)
def context(dps: int) -> mpmath.MPContext:
    # Private contexts keep precision out of mpmath's global state, so
    # concurrent callers at different precisions do not interfere.
    if dps < 15:
        raise ValueError("dps must be >= 15")
    ctx = mpmath.MPContext()
    ctx.dps = int(dps)
    return ctx
