"""Small shared infrastructure: the thread pool honoring NQFORGE_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count():
    """Worker count from the NQFORGE_THREADS environment variable; any
    unset, malformed, or nonpositive value means run sequentially."""
    raw = os.environ.get("NQFORGE_THREADS", "")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return k if k > 1 else 1


def thread_map(fn, items):
    """Map fn over items, in a thread pool when NQFORGE_THREADS asks for
    one.  Order of results matches the input order either way, so check
    reports stay deterministic."""
    items = list(items)
    k = thread_count()
    if k <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))
