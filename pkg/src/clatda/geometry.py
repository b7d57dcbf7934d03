"""Point clouds, Euclidean distances and the Hausdorff distance.

A point cloud is an ``(n, m)`` float64 array. :func:`as_cloud` is the single
validation gate; every public function funnels its inputs through it.
"""

from __future__ import annotations

import io
import os
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import kernels
from .errors import DomainError, MalformedInputError

PointCloud = NDArray[np.float64]


def as_cloud(points: ArrayLike, dim: int | None = None) -> PointCloud:
    """Validate ``points`` and return them as a C-contiguous float64 array.

    A flat sequence is read as one point. Ragged rows, non-finite values and
    a dimension other than ``dim`` (when given) raise
    :class:`MalformedInputError`.
    """
    try:
        arr = np.array(points, dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise MalformedInputError(f"points are not a rectangular array: {exc}") from None
    if arr.ndim == 1 and arr.size:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise MalformedInputError(f"expected an (n, m) array of points, got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise MalformedInputError(f"expected {dim}-dimensional points, got {arr.shape[1]}")
    if not np.isfinite(arr).all():
        raise MalformedInputError("point coordinates must be finite")
    return np.ascontiguousarray(arr)


def _nonempty(points: ArrayLike, name: str = "cloud") -> PointCloud:
    cloud = as_cloud(points)
    if cloud.shape[0] == 0:
        raise DomainError(f"{name} is empty")
    return cloud


def pairwise_distances(cloud: ArrayLike) -> NDArray[np.float64]:
    """Symmetric matrix of Euclidean distances with an exact zero diagonal."""
    return kernels.pairwise_distances(_nonempty(cloud))


def hausdorff_distance(a: ArrayLike, b: ArrayLike) -> float:
    a = _nonempty(a, "first cloud")
    b = _nonempty(b, "second cloud")
    if a.shape[1] != b.shape[1]:
        raise MalformedInputError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    return float(max(kernels.directed_hausdorff(a, b), kernels.directed_hausdorff(b, a)))


def enclosing_radius(dist: NDArray[np.float64]) -> float:
    """Smallest radius r such that some point is within r of all others."""
    if dist.shape[0] == 0:
        return 0.0
    return float(dist.max(axis=1).min())


def read_csv(path: str | os.PathLike | io.TextIOBase) -> PointCloud:
    """Read one point per row. Lines starting with ``#`` and blank lines are
    skipped."""
    if isinstance(path, (str, os.PathLike)):
        with open(path, encoding="utf-8") as fh:
            return _parse_csv(fh)
    return _parse_csv(path)


def _parse_csv(lines: Iterable[str]) -> PointCloud:
    rows = []
    width = None
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(field) for field in line.split(",")]
        except ValueError:
            raise MalformedInputError(f"line {lineno}: non-numeric field in {line!r}") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MalformedInputError(f"line {lineno}: expected {width} fields, got {len(row)}")
        rows.append(row)
    if not rows:
        raise MalformedInputError("no points found")
    return as_cloud(rows)


def format_csv(cloud: ArrayLike, header: str | None = None) -> str:
    cloud = as_cloud(cloud)
    out = []
    if header is not None:
        out.append("# " + header)
    out.extend(",".join(f"{x:.17g}" for x in row) for row in cloud.tolist())
    return "\n".join(out) + "\n"


def write_csv(path: str | os.PathLike, cloud: ArrayLike, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_csv(cloud, header))
