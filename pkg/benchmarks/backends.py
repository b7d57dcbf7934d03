"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/backends.py [--points 1500] [--repeats 3]

Both backends are imported directly, so the ``CLATDA_DISABLE_NUMBA`` flag
does not matter here. Each row reports the best of ``--repeats`` runs after
one untimed warm-up call (which also triggers numba compilation).
"""

import argparse
import time

import numpy as np

from clatda.kernels import _numba, _numpy
from clatda.persistence import _coboundary_csr
from clatda.rips import build_rips
from clatda.synth import GeneratorSpec


def best_of(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(points, seed):
    cloud = GeneratorSpec("random", 2, points, seed).generate()
    complex_ = build_rips(cloud, 2, max_scale=5.0)
    dist = _numpy.pairwise_distances(cloud)
    adj = dist <= 10.0
    np.fill_diagonal(adj, False)
    ii, jj = np.nonzero(np.triu(adj, 1))
    up_ptr = np.zeros(points + 1, dtype=np.int64)
    np.cumsum(np.bincount(ii, minlength=points), out=up_ptr[1:])
    up_idx = jj.astype(np.int64)
    edges = complex_.simplices[1]
    edge_vals = complex_.values[1] * 2
    count = _numpy.count_cofaces(edges, adj, up_ptr, up_idx)
    indptr, indices = _coboundary_csr(complex_, 1)
    n_rows = complex_.count(2)
    cleared = np.zeros(indptr.shape[0] - 1, dtype=np.bool_)
    other = GeneratorSpec("random", 2, points // 3, seed + 1).generate()
    bars = np.random.default_rng(seed).random((60, 60)) < 0.08

    return {
        "pairwise_distances": lambda k: k.pairwise_distances(cloud),
        "directed_hausdorff": lambda k: k.directed_hausdorff(cloud, other),
        "expand_cofaces": lambda k: k.expand_cofaces(edges, edge_vals, dist, adj, up_ptr, up_idx, count),
        "merge_deaths": lambda k: k.merge_deaths(edges, points),
        "reduce_columns": lambda k: k.reduce_columns(indptr, indices, cleared, n_rows),
        "maximum_matching": lambda k: k.maximum_matching(bars),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=1500)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'kernel':<20} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, call in workloads(args.points, args.seed).items():
        fast = best_of(lambda: call(_numba), args.repeats)
        slow = best_of(lambda: call(_numpy), args.repeats)
        print(f"{name:<20} {fast:>10.4f} {slow:>10.4f} {slow / fast:>8.1f}")


if __name__ == "__main__":
    main()
