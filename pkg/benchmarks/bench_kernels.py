"""Compare the compiled kernel backend against the numpy fallback.

Workloads mirror the census hot spots: braid/commute masks over a large
row block, pair matrices over a mid-size block, and closure-style
dedup through RowSet.  Run as `python3 benchmarks/bench_kernels.py`.
"""

from __future__ import annotations

import time

import numpy as np

from coxhom._kernels import _pyfallback

try:
    from coxhom._kernels import _core
except ImportError:
    _core = None

WIDTH = 126
BLOCK = 50_000
PAIR = 250
REPEAT = 3


def _perms(rng, m):
    out = np.empty((m, WIDTH), dtype=np.uint16)
    for i in range(m):
        out[i] = rng.permutation(WIDTH)
    return out


def _time(fn, *args):
    best = float("inf")
    for _ in range(REPEAT):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    big = _perms(rng, BLOCK)
    mid = _perms(rng, PAIR)
    t = rng.permutation(WIDTH).astype(np.uint16)

    backends = [("python", _pyfallback)]
    if _core is not None:
        backends.append(("c", _core))

    jobs = [
        ("braid_mask 50k", lambda k: k.braid_mask(big, t)),
        ("commute_mask 50k", lambda k: k.commute_mask(big, t)),
        ("commute_matrix 250x250", lambda k: k.commute_matrix(mid, mid)),
        ("braid_matrix 250x250", lambda k: k.braid_matrix(mid, mid)),
        ("compose_rows 50k", lambda k: k.compose_rows(big, big)),
        ("invert_rows 50k", lambda k: k.invert_rows(big)),
    ]

    results = {}
    for job, fn in jobs:
        for name, impl in backends:
            results[(job, name)] = _time(fn, impl)

    def rowset_job(impl):
        rs = impl.RowSet(WIDTH)
        rs.add_new(big)
        rs.add_new(big[: BLOCK // 2])

    for name, impl in backends:
        results[("rowset 75k inserts", name)] = _time(rowset_job, impl)

    width = max(len(job) for job, _ in results)
    print(f"{'workload'.ljust(width)}  python      c           speedup")
    jobs_seen = []
    for job, _ in results:
        if job not in jobs_seen:
            jobs_seen.append(job)
    for job in jobs_seen:
        py_t = results[(job, "python")]
        if ("c" in dict(backends)) or _core is not None:
            c_t = results.get((job, "c"))
        else:
            c_t = None
        if c_t is None:
            print(f"{job.ljust(width)}  {py_t * 1e3:8.2f}ms  (no compiled backend)")
        else:
            print(
                f"{job.ljust(width)}  {py_t * 1e3:8.2f}ms  "
                f"{c_t * 1e3:8.2f}ms  {py_t / c_t:6.1f}x"
            )


if __name__ == "__main__":
    main()
