"""Sup-distance between bars and the exact bottleneck distance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import kernels
from .errors import DomainError
from .persistence import INF, Barcode, _as_bars

BarLike = tuple[float, float]


def interval_distance(a: BarLike, b: BarLike | None = None) -> float:
    """``max(|birth diff|, |death diff|)``, or half the length against ``None``.

    An infinite bar is infinitely far from any finite bar and from ``None``.
    """
    x1, y1 = float(a[0]), float(a[1])
    if b is None:
        return abs(y1 - x1) / 2
    x2, y2 = float(b[0]), float(b[1])
    inf1, inf2 = math.isinf(y1), math.isinf(y2)
    if inf1 and inf2:
        return abs(x1 - x2)
    if inf1 or inf2:
        return INF
    return max(abs(x1 - x2), abs(y1 - y2))


@dataclass
class Matching:
    """Bars of the first barcode matched to bars of the second.

    ``pairs`` holds index pairs into ``left`` and ``right``; indices listed in
    ``unmatched_left`` / ``unmatched_right`` are matched with the empty set.
    """

    left: NDArray[np.float64]
    right: NDArray[np.float64]
    pairs: list[tuple[int, int]] = field(default_factory=list)
    unmatched_left: list[int] = field(default_factory=list)
    unmatched_right: list[int] = field(default_factory=list)

    @property
    def cost(self) -> float:
        costs = [interval_distance(self.left[i], self.right[j]) for i, j in self.pairs]
        costs += [interval_distance(self.left[i]) for i in self.unmatched_left]
        costs += [interval_distance(self.right[j]) for j in self.unmatched_right]
        return max(costs, default=0.0)


def _bars_of(b: Barcode | ArrayLike) -> NDArray[np.float64]:
    return b.bars if isinstance(b, Barcode) else _as_bars(b)


def _cost_matrix(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Square cost matrix of the augmented bipartite graph.

    Rows are ``a`` then one diagonal slot per bar of ``b``; columns are ``b``
    then one diagonal slot per bar of ``a``.
    """
    n1, n2 = a.shape[0], b.shape[0]
    cost = np.full((n1 + n2, n1 + n2), INF)
    cost[:n1, :n2] = np.maximum(
        np.abs(a[:, None, 0] - b[None, :, 0]), np.abs(a[:, None, 1] - b[None, :, 1])
    )
    cost[np.arange(n1), n2 + np.arange(n1)] = np.abs(a[:, 1] - a[:, 0]) / 2
    cost[n1 + np.arange(n2), np.arange(n2)] = np.abs(b[:, 1] - b[:, 0]) / 2
    cost[n1:, n2:] = 0.0
    return cost


def _finite_bottleneck(a: NDArray[np.float64], b: NDArray[np.float64]) -> tuple[float, NDArray[np.int64]]:
    n = a.shape[0] + b.shape[0]
    if n == 0:
        return 0.0, np.empty(0, dtype=np.int64)
    cost = _cost_matrix(a, b)
    candidates = np.unique(cost[np.isfinite(cost)])
    lo, hi = 0, candidates.shape[0] - 1
    best = kernels.maximum_matching(cost <= candidates[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        match = kernels.maximum_matching(cost <= candidates[mid])
        if (match >= 0).sum() == n:
            hi, best = mid, match
        else:
            lo = mid + 1
    return float(candidates[hi]), best


def _essential_distance(a: NDArray[np.float64], b: NDArray[np.float64]) -> float:
    if a.shape[0] != b.shape[0]:
        return INF
    if a.shape[0] == 0:
        return 0.0
    return float(np.abs(np.sort(a[:, 0]) - np.sort(b[:, 0])).max())


def _check_degrees(b1, b2) -> None:
    if isinstance(b1, Barcode) and isinstance(b2, Barcode) and b1.degree != b2.degree:
        raise DomainError(f"cannot compare degree {b1.degree} with degree {b2.degree}")


def bottleneck_distance(b1: Barcode | ArrayLike, b2: Barcode | ArrayLike) -> float:
    """Exact bottleneck distance.

    Essential bars are matched by sorted birth; a different number of them
    gives ``inf``. Finite bars use a binary search over the finitely many
    candidate costs with a perfect-matching test at each threshold, so the
    result is always one of the candidate costs.
    """
    _check_degrees(b1, b2)
    a, b = _bars_of(b1), _bars_of(b2)
    fa, fb = np.isfinite(a[:, 1]), np.isfinite(b[:, 1])
    essential = _essential_distance(a[~fa], b[~fb])
    if math.isinf(essential):
        return INF
    finite, _ = _finite_bottleneck(a[fa], b[fb])
    return max(finite, essential)


def bottleneck_matching(b1: Barcode | ArrayLike, b2: Barcode | ArrayLike) -> tuple[float, Matching]:
    """Bottleneck distance together with an optimal matching.

    Indices in the returned :class:`Matching` refer to the sorted bars of each
    barcode (``Barcode.bars`` order).
    """
    _check_degrees(b1, b2)
    a, b = _bars_of(b1), _bars_of(b2)
    fa, fb = np.flatnonzero(np.isfinite(a[:, 1])), np.flatnonzero(np.isfinite(b[:, 1]))
    ea, eb = np.flatnonzero(np.isinf(a[:, 1])), np.flatnonzero(np.isinf(b[:, 1]))
    matching = Matching(a, b)
    essential = _essential_distance(a[ea], b[eb])
    if math.isinf(essential):
        return INF, matching
    # births are already sorted within each barcode
    matching.pairs.extend(zip(ea.tolist(), eb.tolist()))
    value, match = _finite_bottleneck(a[fa], b[fb])
    n1, n2 = fa.shape[0], fb.shape[0]
    for i in range(n1):
        j = int(match[i])
        if j < n2:
            matching.pairs.append((int(fa[i]), int(fb[j])))
        else:
            matching.unmatched_left.append(int(fa[i]))
    partnered = set(int(j) for j in match[:n1] if j < n2)
    matching.unmatched_right.extend(int(fb[j]) for j in range(n2) if j not in partnered)
    return max(value, essential), matching
