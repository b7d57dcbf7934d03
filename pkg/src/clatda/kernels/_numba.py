"""Compiled kernels. Signatures mirror ``_numpy`` one for one."""

import numpy as np
from numba import njit

# fastmath stays off: barcodes are compared bit-for-bit across backends.
jit = njit(cache=True, nogil=True)


@jit
def pairwise_distances(points):
    n, m = points.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for k in range(m):
                diff = points[i, k] - points[j, k]
                s += diff * diff
            d = np.sqrt(s)
            out[i, j] = d
            out[j, i] = d
    return out


@jit
def directed_hausdorff(a, b):
    """max over rows of ``a`` of the distance to the nearest row of ``b``."""
    na, m = a.shape
    nb = b.shape[0]
    cmax = 0.0
    for i in range(na):
        cmin = np.inf
        shadowed = False
        for j in range(nb):
            s = 0.0
            for k in range(m):
                diff = a[i, k] - b[j, k]
                s += diff * diff
            if s < cmax:
                # this row cannot raise the running maximum
                shadowed = True
                break
            if s < cmin:
                cmin = s
        if not shadowed and cmin > cmax:
            cmax = cmin
    return np.sqrt(cmax)


@jit
def count_cofaces(simplices, adj, up_ptr, up_idx):
    n_rows, width = simplices.shape
    count = 0
    for r in range(n_rows):
        last = simplices[r, width - 1]
        for q in range(up_ptr[last], up_ptr[last + 1]):
            v = up_idx[q]
            ok = True
            for t in range(width - 1):
                if not adj[simplices[r, t], v]:
                    ok = False
                    break
            if ok:
                count += 1
    return count


@jit
def expand_cofaces(simplices, values, dist, adj, up_ptr, up_idx, count):
    """Add one vertex to every clique. Output stays lexicographically sorted
    when the input is."""
    n_rows, width = simplices.shape
    out = np.empty((count, width + 1), dtype=np.int64)
    out_val = np.empty(count)
    c = 0
    for r in range(n_rows):
        last = simplices[r, width - 1]
        for q in range(up_ptr[last], up_ptr[last + 1]):
            v = up_idx[q]
            ok = True
            val = values[r]
            for t in range(width - 1):
                u = simplices[r, t]
                if not adj[u, v]:
                    ok = False
                    break
                if dist[u, v] > val:
                    val = dist[u, v]
            if ok:
                if dist[last, v] > val:
                    val = dist[last, v]
                for t in range(width):
                    out[c, t] = simplices[r, t]
                out[c, width] = v
                out_val[c] = val
                c += 1
    return out, out_val


@jit
def _sym_diff(a, na, b, nb, out):
    i = 0
    j = 0
    k = 0
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x < y:
            out[k] = x
            i += 1
            k += 1
        elif y < x:
            out[k] = y
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return k


@jit
def reduce_columns(indptr, indices, cleared, n_rows):
    """Z/2 column reduction of a sparse matrix in CSR-by-column layout.

    Column ``j`` holds ``indices[indptr[j]:indptr[j + 1]]`` in ascending
    order. Returns the pivot (largest row) of each reduced column, ``-1`` for
    columns that reduce to zero and ``-2`` for cleared columns.
    """
    n_cols = indptr.shape[0] - 1
    pivots = np.full(n_cols, -1, dtype=np.int64)
    owner = np.full(n_rows, -1, dtype=np.int64)
    start = np.zeros(n_cols, dtype=np.int64)
    length = np.zeros(n_cols, dtype=np.int64)
    pool = np.empty(1024, dtype=np.int64)
    used = 0
    work = np.empty(64, dtype=np.int64)
    scratch = np.empty(64, dtype=np.int64)
    for j in range(n_cols):
        if cleared[j]:
            pivots[j] = -2
            continue
        lo = indptr[j]
        wl = indptr[j + 1] - lo
        if work.shape[0] < wl:
            work = np.empty(2 * wl, dtype=np.int64)
        for t in range(wl):
            work[t] = indices[lo + t]
        while wl > 0:
            o = owner[work[wl - 1]]
            if o < 0:
                break
            ol = length[o]
            if scratch.shape[0] < wl + ol:
                scratch = np.empty(2 * (wl + ol), dtype=np.int64)
            wl = _sym_diff(work, wl, pool[start[o]:start[o] + ol], ol, scratch)
            work, scratch = scratch, work
        if wl > 0:
            piv = work[wl - 1]
            pivots[j] = piv
            owner[piv] = j
            if used + wl > pool.shape[0]:
                grown = np.empty(2 * (used + wl), dtype=np.int64)
                grown[:used] = pool[:used]
                pool = grown
            pool[used:used + wl] = work[:wl]
            start[j] = used
            length[j] = wl
            used += wl
    return pivots


@jit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@jit
def merge_deaths(edges, n):
    """Union-find over edges in filtration order.

    Returns, per edge, the root of the younger (higher-index) component it
    merges away, or ``-1`` if both ends were already connected.
    """
    parent = np.arange(n)
    out = np.full(edges.shape[0], -1, dtype=np.int64)
    for e in range(edges.shape[0]):
        a = _find(parent, edges[e, 0])
        b = _find(parent, edges[e, 1])
        if a != b:
            if a > b:
                a, b = b, a
            parent[b] = a
            out[e] = b
    return out


@jit
def maximum_matching(adj):
    """Hopcroft-Karp on a dense boolean biadjacency matrix.

    Returns the right partner of every left vertex, ``-1`` if unmatched.
    """
    nl, nr = adj.shape
    match_l = np.full(nl, -1, dtype=np.int64)
    match_r = np.full(nr, -1, dtype=np.int64)
    inf = nl + nr + 1
    dist = np.empty(nl, dtype=np.int64)
    queue = np.empty(nl, dtype=np.int64)
    stack = np.empty(nl + 1, dtype=np.int64)
    via = np.empty(nl + 1, dtype=np.int64)
    it = np.empty(nl, dtype=np.int64)
    while True:
        head = 0
        tail = 0
        for u in range(nl):
            if match_l[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = inf
        found = False
        while head < tail:
            u = queue[head]
            head += 1
            for v in range(nr):
                if adj[u, v]:
                    w = match_r[v]
                    if w == -1:
                        found = True
                    elif dist[w] == inf:
                        dist[w] = dist[u] + 1
                        queue[tail] = w
                        tail += 1
        if not found:
            break
        it[:] = 0
        for s in range(nl):
            if match_l[s] != -1:
                continue
            stack[0] = s
            top = 1
            augmented = False
            while top > 0 and not augmented:
                u = stack[top - 1]
                advanced = False
                while it[u] < nr:
                    v = it[u]
                    it[u] += 1
                    if not adj[u, v]:
                        continue
                    w = match_r[v]
                    if w == -1:
                        via[top - 1] = v
                        for lvl in range(top):
                            match_l[stack[lvl]] = via[lvl]
                            match_r[via[lvl]] = stack[lvl]
                        augmented = True
                        break
                    if dist[w] == dist[u] + 1:
                        via[top - 1] = v
                        stack[top] = w
                        top += 1
                        advanced = True
                        break
                if not advanced and not augmented:
                    dist[u] = inf
                    top -= 1
    return match_l
