from concurrent.futures import ProcessPoolExecutor


def parallel_map(fn, items, jobs=1):
    """Order-preserving map; runs in a process pool when ``jobs > 1``."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
