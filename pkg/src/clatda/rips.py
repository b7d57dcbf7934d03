"""Filtered Vietoris-Rips complexes.

Filtration values are stored in *radius* units: a simplex enters at half of
its largest edge length, so two points at distance ``d`` are joined at scale
``d / 2``. :data:`DIAMETER_PER_SCALE` is the only place this convention lives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import kernels
from .errors import DomainError, ResourceLimitError
from .geometry import as_cloud, enclosing_radius, pairwise_distances

DIAMETER_PER_SCALE = 2.0
DEFAULT_BUDGET = 50_000_000


@dataclass(eq=False)
class FilteredComplex:
    """Simplices grouped by dimension.

    ``simplices[d]`` is an ``(N_d, d + 1)`` array of vertex indices, each row
    strictly increasing, sorted by (filtration value, lexicographic vertices).
    ``values[d]`` holds the matching filtration values.
    """

    n_vertices: int
    dim_cap: int
    scale_cap: float
    simplices: list[NDArray[np.int64]]
    values: list[NDArray[np.float64]]
    _faces: dict[int, NDArray[np.int64]] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return sum(s.shape[0] for s in self.simplices)

    def count(self, dim: int) -> int:
        return self.simplices[dim].shape[0] if dim < len(self.simplices) else 0

    def faces(self, dim: int) -> NDArray[np.int64]:
        """Boundary of the ``dim``-simplices as ascending positions into the
        ``dim - 1`` list."""
        if dim < 1 or dim > self.dim_cap:
            raise DomainError(f"no boundary block for dimension {dim}")
        if dim not in self._faces:
            self._faces[dim] = _face_positions(self.simplices[dim - 1], self.simplices[dim], self.n_vertices)
        return self._faces[dim]

    def ordered(self) -> tuple[NDArray[np.float64], NDArray[np.int64], list[NDArray[np.int64]]]:
        """Global order by (value, dimension, lexicographic vertices).

        Returns the values, the dimensions and the vertex rows in that order.
        """
        vals = np.concatenate(self.values)
        dims = np.concatenate([np.full(v.shape[0], d, dtype=np.int64) for d, v in enumerate(self.values)])
        rows = [row for block in self.simplices for row in block]
        order = np.lexsort((dims, vals))
        return vals[order], dims[order], [rows[i] for i in order]

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], float]]:
        vals, _, rows = self.ordered()
        for value, row in zip(vals.tolist(), rows):
            yield tuple(row.tolist()), value

    def dump(self) -> str:
        """One simplex per line: ``value dim v0 v1 ...`` in filtration order."""
        vals, dims, rows = self.ordered()
        lines = [
            f"{value:.17g} {dim} " + " ".join(map(str, row.tolist()))
            for value, dim, row in zip(vals.tolist(), dims.tolist(), rows)
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def _lex_keys(rows: NDArray[np.int64], base: int) -> NDArray[np.int64]:
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for t in range(rows.shape[1]):
        keys = keys * base + rows[:, t]
    return keys


def _face_positions(lower: NDArray[np.int64], upper: NDArray[np.int64], n: int) -> NDArray[np.int64]:
    width = lower.shape[1]
    if float(n) ** width >= 2.0**63:
        raise DomainError(f"{n} vertices is too many to index {width - 1}-simplices")
    keys = _lex_keys(lower, n)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    out = np.empty((upper.shape[0], upper.shape[1]), dtype=np.int64)
    for t in range(upper.shape[1]):
        face = np.delete(upper, t, axis=1)
        out[:, t] = order[np.searchsorted(sorted_keys, _lex_keys(face, n))]
    out.sort(axis=1)
    return out


def auto_scale(dist: NDArray[np.float64]) -> float:
    """Scale past which the complex is a cone, so all homology is settled."""
    return enclosing_radius(dist) / DIAMETER_PER_SCALE


def build_rips(
    cloud: ArrayLike,
    max_homology_dim: int = 1,
    max_scale: float | str = "auto",
    budget: int = DEFAULT_BUDGET,
    dist: NDArray[np.float64] | None = None,
) -> FilteredComplex:
    """Vietoris-Rips complex with simplices up to dimension
    ``max_homology_dim + 1`` and filtration values up to ``max_scale``.

    ``max_scale="auto"`` stops at the cone point (half the enclosing radius),
    which leaves every barcode complete. Raises :class:`ResourceLimitError`
    before materializing more than ``budget`` simplices.
    """
    if max_homology_dim < 0:
        raise DomainError("max_homology_dim must be nonnegative")
    if dist is None:
        cloud = as_cloud(cloud)
        n = cloud.shape[0]
        dist = pairwise_distances(cloud) if n else np.zeros((0, 0))
    n = dist.shape[0]
    if isinstance(max_scale, str):
        if max_scale != "auto":
            raise DomainError(f"max_scale must be a number or 'auto', got {max_scale!r}")
        scale = auto_scale(dist)
    else:
        scale = float(max_scale)
        if not scale >= 0:
            raise DomainError(f"max_scale must be nonnegative, got {max_scale!r}")
    dim_cap = max_homology_dim + 1

    def charge(total: int) -> None:
        if total > budget:
            raise ResourceLimitError(
                f"Rips complex needs at least {total} simplices; budget is {budget}", budget=budget
            )

    charge(n)
    adj = dist <= DIAMETER_PER_SCALE * scale
    np.fill_diagonal(adj, False)
    ii, jj = np.nonzero(np.triu(adj, 1))
    charge(n + ii.shape[0])
    up_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(ii, minlength=n), out=up_ptr[1:])
    up_idx = jj.astype(np.int64)

    simplices = [np.arange(n, dtype=np.int64)[:, None]]
    values = [np.zeros(n)]
    if dim_cap >= 1:
        simplices.append(np.stack([ii, jj], axis=1).astype(np.int64))
        values.append(dist[ii, jj])
    total = n + ii.shape[0]
    for _ in range(2, dim_cap + 1):
        prev, prev_val = simplices[-1], values[-1]
        count = int(kernels.count_cofaces(prev, adj, up_ptr, up_idx)) if prev.shape[0] else 0
        total += count
        charge(total)
        if count:
            rows, vals = kernels.expand_cofaces(prev, prev_val, dist, adj, up_ptr, up_idx, count)
        else:
            rows, vals = np.empty((0, prev.shape[1] + 1), dtype=np.int64), np.empty(0)
        simplices.append(rows)
        values.append(vals)

    for d in range(1, len(values)):
        values[d] = values[d] / DIAMETER_PER_SCALE
        order = np.argsort(values[d], kind="stable")
        values[d] = values[d][order]
        simplices[d] = simplices[d][order]
    return FilteredComplex(n, dim_cap, scale, simplices, values)
