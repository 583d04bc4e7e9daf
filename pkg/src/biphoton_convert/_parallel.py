import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    """Thread cap from ``BIPHOTON_THREADS``; 0 or unset means the default of min(4, cpus)."""
    raw = os.environ.get("BIPHOTON_THREADS", "").strip()
    n = int(raw) if raw else 0
    if n <= 0:
        n = min(4, os.cpu_count() or 1)
    return n


def ordered_map(func, items):
    """``list(map(func, items))``, possibly threaded, always in input order."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
