"""Process-pool fan-out with deterministic, order-preserving merges."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs():
    return os.cpu_count() or 1


def chunk_ranges(n, parts):
    """Split range(n) into at most ``parts`` contiguous (start, stop) pairs."""
    parts = max(1, min(parts, n)) if n else 1
    step, extra = divmod(n, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def fan_out(func, spec, tasks, jobs=1):
    """Evaluate func(spec, *task) for every task; results come back in task order.

    ``spec`` is a hashable tower description so that workers rebuild the
    field locally instead of pickling tables.
    """
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [func(spec, *t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [ex.submit(func, spec, *t) for t in tasks]
        return [f.result() for f in futures]
