"""Persistence barcodes over the two-element field.

Boundary blocks are reduced from the top dimension down; every pivot found in
dimension ``d`` clears the matching column in dimension ``d - 1`` ("twist").
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import kernels
from .errors import DomainError, MalformedInputError, ResourceLimitError
from .rips import FilteredComplex

INF = math.inf
ORACLE_BUDGET = 5000


class Bar(NamedTuple):
    birth: float
    death: float

    @property
    def length(self) -> float:
        return self.death - self.birth


def _as_bars(bars: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(bars, dtype=np.float64).reshape(-1, 2)
    if np.isnan(arr).any() or np.isinf(arr[:, 0]).any():
        raise MalformedInputError("bar births must be finite numbers")
    if (arr[:, 1] <= arr[:, 0]).any():
        raise MalformedInputError("every bar needs death > birth")
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order]


@dataclass(frozen=True, eq=False)
class Barcode:
    """Multiset of half-open bars in one homology degree.

    ``bars`` is an ``(n, 2)`` array of (birth, death) sorted by birth then
    death; essential classes have ``death == inf``.
    """

    degree: int
    bars: NDArray[np.float64]

    def __init__(self, degree: int, bars: ArrayLike = ()):
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "bars", _as_bars(bars))

    def __len__(self) -> int:
        return self.bars.shape[0]

    def __iter__(self):
        return (Bar(b, d) for b, d in self.bars.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.bars, other.bars)

    def __repr__(self) -> str:
        return f"Barcode(degree={self.degree}, bars={self.bars.tolist()})"

    @property
    def finite(self) -> NDArray[np.float64]:
        return self.bars[np.isfinite(self.bars[:, 1])]

    @property
    def essential(self) -> NDArray[np.float64]:
        return self.bars[np.isinf(self.bars[:, 1])]

    def alive_at(self, epsilon: float) -> int:
        """Number of bars with ``birth <= epsilon < death``."""
        return int(((self.bars[:, 0] <= epsilon) & (epsilon < self.bars[:, 1])).sum())

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "bars": [
                {"birth": b, "death": d if math.isfinite(d) else "inf"}
                for b, d in self.bars.tolist()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Barcode":
        try:
            bars = [(float(b["birth"]), _parse_death(b["death"])) for b in data["bars"]]
            return cls(int(data["degree"]), bars)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"malformed barcode: {exc}") from None


def _parse_death(value: Any) -> float:
    if value == "inf":
        return INF
    if isinstance(value, str):
        raise ValueError(f"death must be a number or 'inf', got {value!r}")
    return float(value)


def _boundary_csr(complex_: FilteredComplex, dim: int):
    faces = complex_.faces(dim)
    n, width = faces.shape
    return np.arange(0, n * width + 1, width, dtype=np.int64), faces.ravel()


def _coboundary_csr(complex_: FilteredComplex, dim: int):
    """Anti-transposed boundary of ``dim + 1``: column ``j`` is the
    ``dim``-simplex ``N - 1 - j``, rows count cofaces from the top down."""
    faces = complex_.faces(dim + 1)[::-1]
    n_cols = complex_.count(dim)
    cols = (n_cols - 1 - faces).ravel()
    rows = np.repeat(np.arange(faces.shape[0], dtype=np.int64), faces.shape[1])
    order = np.argsort(cols, kind="stable")
    indptr = np.zeros(n_cols + 1, dtype=np.int64)
    np.cumsum(np.bincount(cols, minlength=n_cols), out=indptr[1:])
    return indptr, rows[order]


def _pairs_by_boundary(complex_: FilteredComplex, max_degree: int):
    """Boundary reduction from the top dimension down, with clearing."""
    pairs, essential = {}, {}
    pivots: dict[int, NDArray[np.int64]] = {}
    cleared = np.zeros(complex_.count(max_degree + 1), dtype=bool)
    for d in range(max_degree + 1, 0, -1):
        indptr, indices = _boundary_csr(complex_, d)
        pivots[d] = kernels.reduce_columns(indptr, indices, cleared, complex_.count(d - 1))
        cleared = np.zeros(complex_.count(d - 1), dtype=bool)
        cleared[pivots[d][pivots[d] >= 0]] = True
    for k in range(max_degree + 1):
        upper = pivots[k + 1]
        cols = np.flatnonzero(upper >= 0)
        pairs[k] = (upper[cols], cols)
        positive = np.ones(complex_.count(k), dtype=bool) if k == 0 else pivots[k] == -1
        positive[upper[cols]] = False
        essential[k] = np.flatnonzero(positive)
    return pairs, essential


def _pairs_by_coboundary(complex_: FilteredComplex, max_degree: int):
    """Coboundary reduction from degree 0 up, with clearing.

    Produces the same pairing as the boundary reduction while leaving far
    fewer columns to reduce on Rips complexes.
    """
    pairs, essential = {}, {}
    n = complex_.n_vertices
    if complex_.dim_cap >= 1:
        killed = kernels.merge_deaths(complex_.simplices[1], n)
    else:
        killed = np.empty(0, dtype=np.int64)
    edges = np.flatnonzero(killed >= 0)
    pairs[0] = (killed[edges], edges)
    alive = np.ones(n, dtype=bool)
    alive[killed[edges]] = False
    essential[0] = np.flatnonzero(alive)
    negative = killed >= 0
    for k in range(1, max_degree + 1):
        n_lo, n_hi = complex_.count(k), complex_.count(k + 1)
        indptr, indices = _coboundary_csr(complex_, k)
        piv = kernels.reduce_columns(indptr, indices, negative[::-1].copy(), n_hi)
        cols = np.flatnonzero(piv >= 0)
        births = n_lo - 1 - cols
        deaths = n_hi - 1 - piv[cols]
        order = np.argsort(deaths)
        pairs[k] = (births[order], deaths[order])
        essential[k] = np.sort(n_lo - 1 - np.flatnonzero(piv == -1))
        negative = np.zeros(n_hi, dtype=bool)
        negative[deaths] = True
    return pairs, essential


METHODS = {"coboundary": _pairs_by_coboundary, "boundary": _pairs_by_boundary}


def compute_persistence(
    complex_: FilteredComplex, max_degree: int | None = None, method: str = "coboundary"
) -> list[Barcode]:
    """Barcodes in degrees ``0..max_degree`` (default ``dim_cap - 1``).

    A pair (birth simplex, death simplex) becomes a bar when the death value
    strictly exceeds the birth value; unpaired positive simplices give
    infinite bars. ``method`` picks the reduction; both give identical
    barcodes.
    """
    if max_degree is None:
        max_degree = complex_.dim_cap - 1
    if max_degree < 0 or max_degree > complex_.dim_cap - 1:
        raise DomainError(
            f"max_degree must lie in [0, {complex_.dim_cap - 1}] for a complex capped at "
            f"dimension {complex_.dim_cap}"
        )
    if method not in METHODS:
        raise DomainError(f"unknown reduction method {method!r}; choose from {sorted(METHODS)}")
    pairs, essential = METHODS[method](complex_, max_degree)

    barcodes = []
    for k in range(max_degree + 1):
        born, died = pairs[k]
        births = complex_.values[k][born]
        deaths = complex_.values[k + 1][died]
        keep = deaths > births
        finite = np.stack([births[keep], deaths[keep]], axis=1)
        essential_births = complex_.values[k][essential[k]]
        infinite = np.stack([essential_births, np.full(essential_births.shape[0], INF)], axis=1)
        barcodes.append(Barcode(k, np.concatenate([finite, infinite])))
    return barcodes


def _gf2_rank(matrix: NDArray[np.bool_]) -> int:
    m = matrix.copy()
    rank = 0
    n_rows = m.shape[0]
    for c in range(m.shape[1]):
        if rank == n_rows:
            break
        hits = np.flatnonzero(m[rank:, c])
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        mask = m[:, c].copy()
        mask[rank] = False
        m[mask] ^= m[rank]
        rank += 1
    return rank


def _boundary_rank(complex_: FilteredComplex, dim: int, counts: Sequence[int]) -> int:
    if dim < 1 or dim > complex_.dim_cap or counts[dim] == 0 or counts[dim - 1] == 0:
        return 0
    index = {tuple(row): i for i, row in enumerate(complex_.simplices[dim - 1][: counts[dim - 1]].tolist())}
    matrix = np.zeros((counts[dim - 1], counts[dim]), dtype=bool)
    for j, row in enumerate(complex_.simplices[dim][: counts[dim]].tolist()):
        for t in range(len(row)):
            matrix[index[tuple(row[:t] + row[t + 1:])], j] = True
    return _gf2_rank(matrix)


def betti_oracle(
    complex_: FilteredComplex, epsilon: float, degree: int, budget: int = ORACLE_BUDGET
) -> int:
    """Betti number of the sublevel complex at ``epsilon`` from explicit
    boundary ranks. Meant for validating :func:`compute_persistence` on small
    complexes only."""
    if degree < 0 or degree + 1 > complex_.dim_cap:
        raise DomainError(f"degree {degree} needs simplices of dimension {degree + 1}")
    counts = [int(np.searchsorted(v, epsilon, side="right")) for v in complex_.values]
    size = sum(counts[max(0, degree - 1): degree + 2])
    if size > budget:
        raise ResourceLimitError(f"oracle needs {size} simplices; budget is {budget}", budget=budget)
    return counts[degree] - _boundary_rank(complex_, degree, counts) - _boundary_rank(complex_, degree + 1, counts)


def barcodes_to_json(barcodes: Iterable[Barcode]) -> str:
    return json.dumps([b.to_dict() for b in barcodes], indent=1) + "\n"


def barcodes_from_json(text: str) -> list[Barcode]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid barcode JSON: {exc}") from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise MalformedInputError("barcode JSON must be an object or a list of objects")
    return [Barcode.from_dict(item) for item in data]


def write_barcodes(path: str | os.PathLike, barcodes: Iterable[Barcode]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(barcodes_to_json(barcodes))


def read_barcodes(path: str | os.PathLike) -> list[Barcode]:
    with open(path, encoding="utf-8") as fh:
        return barcodes_from_json(fh.read())
