"""Characteristic lattice reduction of point clouds.

Space is cut into half-open cubes ``[k*delta, (k+1)*delta)`` per axis, anchored
at the origin, and every occupied cube contributes exactly one sample point.
Output points are ordered lexicographically by cube index.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError, NoSolutionError
from .geometry import PointCloud, _nonempty, as_cloud

# int64 cube indices must not overflow
_MAX_INDEX = 2.0**62

RATE_PROBES = 64


class Strategy(str, enum.Enum):
    CENTER = "center"
    FIRST = "first"
    CENTROID = "centroid"


class Occupancy(NamedTuple):
    cells: NDArray[np.int64]  # (k, m) occupied cube indices, lexicographic
    labels: NDArray[np.int64]  # cube position of every input point
    first: NDArray[np.int64]  # lowest input index in each cube
    counts: NDArray[np.int64]


class RateSolution(NamedTuple):
    delta: float
    rate: float
    size: int


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not delta > 0 or not math.isfinite(delta):
        raise DomainError(f"delta must be a positive finite number, got {delta!r}")
    return delta


def cell_indices(cloud: ArrayLike, delta: float) -> NDArray[np.int64]:
    delta = _check_delta(delta)
    scaled = np.floor(as_cloud(cloud) / delta)
    if scaled.size and np.abs(scaled).max() >= _MAX_INDEX:
        raise DomainError(f"delta={delta!r} is too small for the coordinate range")
    return scaled.astype(np.int64)


def cell_index(point: ArrayLike, delta: float) -> tuple[int, ...]:
    """Integer cube coordinates ``floor(x_i / delta)`` of a single point."""
    return tuple(int(k) for k in cell_indices(as_cloud(point)[:1], delta)[0])


def occupancy(cloud: ArrayLike, delta: float) -> Occupancy:
    idx = cell_indices(_nonempty(cloud), delta)
    cells, first, labels, counts = np.unique(
        idx, axis=0, return_index=True, return_inverse=True, return_counts=True
    )
    return Occupancy(cells, labels.reshape(-1), first, counts)


def reduce(cloud: ArrayLike, delta: float, strategy: Strategy | str = Strategy.CENTER) -> PointCloud:
    """One sample point per occupied cube.

    ``center`` places it at the cube center, ``first`` keeps the
    lowest-index member and ``centroid`` averages the members.
    """
    cloud = _nonempty(cloud)
    delta = _check_delta(delta)
    strategy = Strategy(strategy)
    occ = occupancy(cloud, delta)
    if strategy is Strategy.CENTER:
        return occ.cells * delta + delta / 2
    if strategy is Strategy.FIRST:
        return cloud[occ.first].copy()
    sums = np.zeros((occ.cells.shape[0], cloud.shape[1]))
    np.add.at(sums, occ.labels, cloud)
    return sums / occ.counts[:, None]


def reduction_rate(cloud: ArrayLike, delta: float) -> float:
    """Fraction of points removed by reducing at ``delta``."""
    cloud = _nonempty(cloud)
    return 1.0 - occupancy(cloud, delta).cells.shape[0] / cloud.shape[0]


def cell_count_bound(cloud: ArrayLike, delta: float) -> int:
    """Upper bound on the number of occupied cubes from the bounding box alone."""
    cloud = _nonempty(cloud)
    delta = _check_delta(delta)
    bound = 1
    for hi, lo in zip(cloud.max(axis=0).tolist(), cloud.min(axis=0).tolist()):
        bound *= math.floor(hi / delta) + math.floor(-lo / delta) + 2
    return bound


def lemma_bound_holds(cloud: ArrayLike, delta: float) -> bool:
    """True when the bounding-box cube count already guarantees a reduction."""
    cloud = _nonempty(cloud)
    return cell_count_bound(cloud, delta) < cloud.shape[0]


def search_bracket(cloud: ArrayLike) -> tuple[float, float]:
    """``(smallest positive coordinate gap, largest axis extent)``."""
    cloud = _nonempty(cloud)
    gaps = []
    for axis in cloud.T:
        steps = np.diff(np.unique(axis))
        if steps.size:
            gaps.append(steps.min())
    if not gaps:
        raise DomainError("all points coincide; no grid size changes the reduction rate")
    extent = float((cloud.max(axis=0) - cloud.min(axis=0)).max())
    return float(min(gaps)), extent


def delta_for_rate(cloud: ArrayLike, target_rate: float, tolerance: float = 0.01) -> RateSolution:
    """Find the smallest probed ``delta`` whose reduction rate is within
    ``tolerance`` of ``target_rate``.

    The rate is not monotone in ``delta`` since lattices of different sizes
    are not nested, so bisection (assuming rough monotonicity) is followed by
    a linear scan of :data:`RATE_PROBES` values around its result. Raises
    :class:`NoSolutionError` if no probe lands within tolerance.
    """
    cloud = _nonempty(cloud)
    if not 0.0 <= target_rate < 1.0:
        raise DomainError(f"target rate must lie in [0, 1), got {target_rate!r}")
    if tolerance < 0:
        raise DomainError("tolerance must be nonnegative")
    n = cloud.shape[0]
    lo, hi = search_bracket(cloud)
    probes: dict[float, int] = {}

    def size(delta: float) -> int:
        if delta not in probes:
            probes[delta] = occupancy(cloud, delta).cells.shape[0]
        return probes[delta]

    def rate(delta: float) -> float:
        return 1.0 - size(delta) / n

    if abs(rate(lo) - target_rate) <= tolerance:
        return RateSolution(lo, rate(lo), size(lo))

    a, b = lo, hi
    if rate(b) >= target_rate:
        resolution = 1e-6 * (hi - lo)
        while b - a > resolution:
            mid = 0.5 * (a + b)
            if rate(mid) >= target_rate:
                b = mid
            else:
                a = mid
        for delta in np.linspace(max(lo, 0.95 * b), min(hi, 1.05 * b), RATE_PROBES).tolist():
            rate(delta)

    hits = sorted(d for d in probes if abs(rate(d) - target_rate) <= tolerance)
    if hits:
        best = hits[0]
        return RateSolution(best, rate(best), size(best))
    closest = min(probes, key=lambda d: (abs(rate(d) - target_rate), d))
    raise NoSolutionError(
        f"no delta reaches rate {target_rate:.4f} +/- {tolerance:.4f}; "
        f"closest is {rate(closest):.4f} at delta={closest:.6g}",
        closest_rate=rate(closest),
        closest_delta=closest,
    )
