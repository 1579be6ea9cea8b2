"""Compare the compiled and pure-Python kernels.

Run with ``python benchmarks/bench_kernels.py``. Timings are best of
``--repeat`` runs; the compiled column is skipped when the extension is not built.
"""

import argparse
import random
import time

from daginclusion import _pykernels
from daginclusion.oracle import default_nodes, enumerate_dags, random_dag, triplet_masks

try:
    from daginclusion import _ckernels
except ImportError:
    _ckernels = None


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(seed):
    dags4 = list(enumerate_dags(default_nodes(4)))
    trip4 = triplet_masks(4)
    rng = random.Random(seed)
    dags5 = [random_dag(default_nodes(5), rng.random(), rng.getrandbits(32)) for _ in range(2000)]
    trip5 = triplet_masks(5)
    wide = [random_dag([f"v{i:02d}" for i in range(40)], 0.15, rng.getrandbits(32)) for _ in range(200)]
    queries = [(g, 1 << rng.randrange(40), rng.getrandbits(40)) for g in wide for _ in range(20)]

    def models(backend, dags, trip):
        return lambda: [backend.separated_mask(g.parent_masks, g.child_masks, trip) for g in dags]

    def reach(backend):
        return lambda: [backend.reach(g.parent_masks, g.child_masks, s, c & ~s) for g, s, c in queries]

    def acyclic(backend):
        return lambda: [backend.is_acyclic(g.parent_masks) for g in wide]

    return [
        ("models, all 543 DAGs on 4 nodes", lambda b: models(b, dags4, trip4)),
        ("models, 2000 random DAGs on 5 nodes", lambda b: models(b, dags5, trip5)),
        ("reach, 4000 queries on 40 nodes", reach),
        ("acyclicity, 200 DAGs on 40 nodes", acyclic),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'workload':40s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, make in workloads(args.seed):
        py = best_of(args.repeat, make(_pykernels))
        if _ckernels is None:
            print(f"{name:40s} {py:9.3f}s {'n/a':>10s} {'':>8s}")
            continue
        c = best_of(args.repeat, make(_ckernels))
        print(f"{name:40s} {py:9.3f}s {c:9.3f}s {py / c:7.1f}x")


if __name__ == "__main__":
    main()
