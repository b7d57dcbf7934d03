import numpy as np
import pytest

from clatda import kernels
from clatda.kernels import _numba, _numpy


def test_backend_flag():
    assert kernels.BACKEND in ("numba", "numpy")


def test_distances_agree(rng):
    pts = rng.normal(size=(300, 3))
    a, b = _numba.pairwise_distances(pts), _numpy.pairwise_distances(pts)
    assert np.allclose(a, b, rtol=0, atol=1e-12)
    assert np.all(np.diag(b) == 0)
    q = rng.normal(size=(50, 3))
    assert _numba.directed_hausdorff(pts, q) == pytest.approx(_numpy.directed_hausdorff(pts, q), abs=1e-12)


def _expansion_inputs(rng):
    cloud = rng.random((40, 2))
    dist = _numpy.pairwise_distances(cloud)
    adj = dist <= 0.5
    np.fill_diagonal(adj, False)
    ii, jj = np.nonzero(np.triu(adj, 1))
    up_ptr = np.zeros(41, dtype=np.int64)
    np.cumsum(np.bincount(ii, minlength=40), out=up_ptr[1:])
    edges = np.stack([ii, jj], axis=1).astype(np.int64)
    return edges, dist[ii, jj], dist, adj, up_ptr, jj.astype(np.int64)


def test_coface_expansion_agrees(rng):
    edges, vals, dist, adj, up_ptr, up_idx = _expansion_inputs(rng)
    n1 = _numba.count_cofaces(edges, adj, up_ptr, up_idx)
    assert n1 == _numpy.count_cofaces(edges, adj, up_ptr, up_idx) > 0
    r1, v1 = _numba.expand_cofaces(edges, vals, dist, adj, up_ptr, up_idx, n1)
    r2, v2 = _numpy.expand_cofaces(edges, vals, dist, adj, up_ptr, up_idx, n1)
    k1 = np.lexsort(r1.T[::-1])
    k2 = np.lexsort(r2.T[::-1])
    assert np.array_equal(r1[k1], r2[k2])
    assert np.array_equal(v1[k1], v2[k2])


def test_column_reduction_agrees(rng):
    n_rows, n_cols = 30, 60
    dense = rng.random((n_rows, n_cols)) < 0.15
    indptr = np.zeros(n_cols + 1, dtype=np.int64)
    np.cumsum(dense.sum(axis=0), out=indptr[1:])
    indices = np.concatenate([np.flatnonzero(dense[:, j]) for j in range(n_cols)]).astype(np.int64)
    cleared = np.zeros(n_cols, dtype=np.bool_)
    cleared[::7] = True
    a = _numba.reduce_columns(indptr, indices, cleared, n_rows)
    b = _numpy.reduce_columns(indptr, indices, cleared, n_rows)
    assert np.array_equal(a, b)
    assert np.all(a[cleared] == -2)
    live = a[a >= 0]
    assert np.unique(live).size == live.size


def test_merge_deaths_agree(rng):
    edges = rng.integers(0, 25, size=(80, 2)).astype(np.int64)
    assert np.array_equal(_numba.merge_deaths(edges, 25), _numpy.merge_deaths(edges, 25))


def test_matching_size_agrees(rng):
    for _ in range(20):
        adj = rng.random((9, 9)) < 0.3
        a, b = _numba.maximum_matching(adj), _numpy.maximum_matching(adj)
        assert (a >= 0).sum() == (b >= 0).sum()
        for m in (a, b):
            rows = np.flatnonzero(m >= 0)
            assert np.all(adj[rows, m[rows]])
            assert np.unique(m[rows]).size == rows.size


def test_env_flag_selects_numpy_with_identical_output(tmp_path):
    import os
    import subprocess
    import sys

    code = (
        "import sys; from clatda import kernels, synth, rips, persistence as p;"
        "c = synth.GeneratorSpec('random', 2, 120, 3).generate();"
        "sys.stdout.write(kernels.BACKEND + '\\n' + p.barcodes_to_json(p.compute_persistence(rips.build_rips(c, 1), 1)))"
    )
    outs = {}
    for flag in ("0", "1"):
        env = dict(os.environ, CLATDA_DISABLE_NUMBA=flag)
        outs[flag] = subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True, text=True).stdout
    assert outs["0"].split("\n", 1)[0] == "numba"
    assert outs["1"].split("\n", 1)[0] == "numpy"
    assert outs["0"].split("\n", 1)[1] == outs["1"].split("\n", 1)[1]


def test_backend_benchmark_script_runs():
    import pathlib
    import subprocess
    import sys

    script = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "backends.py"
    out = subprocess.run(
        [sys.executable, str(script), "--points", "120", "--repeats", "1"],
        check=True, capture_output=True, text=True,
    ).stdout
    assert out.splitlines()[0].split()[0] == "kernel"
    assert len(out.splitlines()) == 7
