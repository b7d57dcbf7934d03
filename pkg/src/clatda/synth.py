"""Seeded point-cloud generators and box normalization.

Randomness comes from ``numpy.random.Generator(PCG64(seed))`` so a seed
reproduces the same cloud on any platform.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import DomainError
from .geometry import PointCloud, _nonempty

BOX = 100.0


class DegenerateAxisWarning(UserWarning):
    """An axis had a single value and was mapped to the middle of the box."""


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sphere_noise(m: int) -> float:
    """Standard deviation of the radial noise for an (m-1)-sphere in R^m."""
    return 5 * 0.1 ** (m - 1)


def gen_sphere(m: int, p: int, seed: int, noise: str = "gaussian") -> PointCloud:
    """``p`` points on the unit (m-1)-sphere with noisy radii.

    Angles are uniform in hyperspherical coordinates: the first ``m - 2`` in
    ``[0, pi]`` and the last in ``[0, 2 pi)``. The radius is ``1 + e`` where
    ``e`` is normal with standard deviation :func:`sphere_noise` (``noise=
    "gaussian"``), uniform with the same standard deviation (``"uniform"``)
    or zero (``"none"``).
    """
    if m < 2:
        raise DomainError(f"sphere clouds need m >= 2, got {m}")
    if p < 1:
        raise DomainError(f"point count must be positive, got {p}")
    rng = _rng(seed)
    polar = rng.uniform(0.0, np.pi, size=(p, m - 2))
    azimuth = rng.uniform(0.0, 2 * np.pi, size=(p, 1))
    angles = np.concatenate([polar, azimuth], axis=1)
    sigma = sphere_noise(m)
    if noise == "gaussian":
        radius = 1.0 + rng.normal(0.0, sigma, size=p)
    elif noise == "uniform":
        half_width = sigma * np.sqrt(3.0)
        radius = 1.0 + rng.uniform(-half_width, half_width, size=p)
    elif noise == "none":
        radius = np.ones(p)
    else:
        raise DomainError(f"unknown noise model {noise!r}")

    # x_k = r sin(a_1)...sin(a_{k-1}) cos(a_k), x_m = r sin(a_1)...sin(a_{m-1})
    sin_prefix = np.cumprod(np.concatenate([np.ones((p, 1)), np.sin(angles)], axis=1), axis=1)
    points = np.empty((p, m))
    points[:, :-1] = sin_prefix[:, :-1] * np.cos(angles)
    points[:, -1] = sin_prefix[:, -1]
    return points * radius[:, None]


def gen_random(m: int, p: int, seed: int) -> PointCloud:
    """``p`` points uniform in the unit cube ``[0, 1]^m``."""
    if m < 1:
        raise DomainError(f"dimension must be positive, got {m}")
    if p < 1:
        raise DomainError(f"point count must be positive, got {p}")
    return _rng(seed).random((p, m))


def normalize_box(cloud: ArrayLike) -> PointCloud:
    """Min-max map each axis onto ``[0, 100]``.

    A constant axis is sent to 50 and a :class:`DegenerateAxisWarning` is
    issued.
    """
    cloud = _nonempty(cloud)
    lo = cloud.min(axis=0)
    hi = cloud.max(axis=0)
    span = hi - lo
    flat = span == 0
    if flat.any():
        warnings.warn(
            f"constant axes {np.flatnonzero(flat).tolist()} mapped to {BOX / 2}",
            DegenerateAxisWarning,
            stacklevel=2,
        )
    out = (cloud - lo) / np.where(flat, 1.0, span) * BOX
    out[:, flat] = BOX / 2
    return out


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    dim: int
    count: int
    seed: int
    normalize: bool = True

    def generate(self) -> PointCloud:
        if self.kind == "sphere":
            cloud = gen_sphere(self.dim, self.count, self.seed)
        elif self.kind == "random":
            cloud = gen_random(self.dim, self.count, self.seed)
        else:
            raise DomainError(f"unknown cloud kind {self.kind!r}")
        if self.normalize:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DegenerateAxisWarning)
                cloud = normalize_box(cloud)
        return cloud
