"""Reference kernels in numpy, scipy and plain Python.

Used when numba is unavailable or disabled. Results agree bit for bit with
the compiled kernels; only speed differs.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

_BLOCK = 256
_CANDIDATE_BLOCK = 1 << 20


def _sq_dists(a, b):
    diff = a[:, None, :] - b[None, :, :]
    return (diff * diff).sum(axis=-1)


def pairwise_distances(points):
    n = points.shape[0]
    out = np.empty((n, n))
    for lo in range(0, n, _BLOCK):
        out[lo:lo + _BLOCK] = np.sqrt(_sq_dists(points[lo:lo + _BLOCK], points))
    np.fill_diagonal(out, 0.0)
    return out


def directed_hausdorff(a, b):
    cmax = 0.0
    for lo in range(0, a.shape[0], _BLOCK):
        cmax = max(cmax, _sq_dists(a[lo:lo + _BLOCK], b).min(axis=1).max())
    return np.sqrt(cmax)


def _candidates(simplices, up_ptr, up_idx):
    last = simplices[:, -1]
    deg = up_ptr[last + 1] - up_ptr[last]
    rows = np.repeat(np.arange(simplices.shape[0]), deg)
    offsets = np.arange(rows.shape[0]) - np.repeat(np.cumsum(deg) - deg, deg)
    verts = up_idx[np.repeat(up_ptr[last], deg) + offsets]
    return rows, verts


def _blocks(simplices, up_ptr):
    deg = np.diff(up_ptr)[simplices[:, -1]]
    bounds = np.cumsum(deg)
    lo = 0
    while lo < simplices.shape[0]:
        base = bounds[lo - 1] if lo else 0
        hi = max(lo + 1, int(np.searchsorted(bounds, base + _CANDIDATE_BLOCK, side="right")))
        yield lo, hi
        lo = hi


def _filtered(block, adj, up_ptr, up_idx):
    rows, verts = _candidates(block, up_ptr, up_idx)
    keep = np.ones(rows.shape[0], dtype=bool)
    for t in range(block.shape[1] - 1):
        keep &= adj[block[rows, t], verts]
    return rows[keep], verts[keep]


def count_cofaces(simplices, adj, up_ptr, up_idx):
    total = 0
    for lo, hi in _blocks(simplices, up_ptr):
        rows, _ = _filtered(simplices[lo:hi], adj, up_ptr, up_idx)
        total += rows.shape[0]
    return total


def expand_cofaces(simplices, values, dist, adj, up_ptr, up_idx, count):
    out = np.empty((count, simplices.shape[1] + 1), dtype=np.int64)
    out_val = np.empty(count)
    c = 0
    for lo, hi in _blocks(simplices, up_ptr):
        block = simplices[lo:hi]
        rows, verts = _filtered(block, adj, up_ptr, up_idx)
        k = rows.shape[0]
        parent = block[rows]
        out[c:c + k, :-1] = parent
        out[c:c + k, -1] = verts
        out_val[c:c + k] = np.maximum(values[lo:hi][rows], dist[parent, verts[:, None]].max(axis=1))
        c += k
    return out, out_val


def reduce_columns(indptr, indices, cleared, n_rows):
    pivots = np.full(indptr.shape[0] - 1, -1, dtype=np.int64)
    owner = {}
    bounds = indptr.tolist()
    rows = indices.tolist()
    for j in range(len(bounds) - 1):
        if cleared[j]:
            pivots[j] = -2
            continue
        work = set(rows[bounds[j]:bounds[j + 1]])
        while work:
            piv = max(work)
            other = owner.get(piv)
            if other is None:
                owner[piv] = work
                pivots[j] = piv
                break
            work ^= other
    return pivots


def merge_deaths(edges, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = np.full(edges.shape[0], -1, dtype=np.int64)
    for e, (u, v) in enumerate(edges.tolist()):
        a, b = find(u), find(v)
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
            out[e] = b
    return out


def maximum_matching(adj):
    if adj.size == 0:
        return np.full(adj.shape[0], -1, dtype=np.int64)
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    return match.astype(np.int64)
