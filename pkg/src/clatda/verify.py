"""Empirical check of the lattice-reduction stability bounds.

For a cloud ``X`` and lattice size ``delta`` the pipeline compares three
barcodes: ``X`` itself, the reduced cloud ``X*`` for a sampling strategy, and
the cube-center reduction ``Xc``. The bottleneck distances must satisfy

    d_B(X, X*)  <= sqrt(m) * delta
    d_B(X*, Xc) <= sqrt(m) * delta / 2

and neither may exceed the Hausdorff distance of the underlying clouds.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from . import cla
from .diagram_metrics import bottleneck_distance
from .errors import NoSolutionError
from .geometry import _nonempty, hausdorff_distance
from .persistence import Barcode, compute_persistence
from .rips import DEFAULT_BUDGET, build_rips
from .synth import GeneratorSpec

SLACK = 1e-9

CSV_FIELDS = [
    "m", "p", "seed", "rate", "strategy", "delta", "reduced_count", "degree",
    "db_reduced", "bound_reduced", "margin_reduced",
    "db_center", "bound_center", "margin_center",
    "dh_reduced", "dh_center",
]


def barcodes_of(cloud: ArrayLike, max_degree: int, budget: int = DEFAULT_BUDGET) -> list[Barcode]:
    """Complete barcodes in degrees ``0..max_degree``."""
    return compute_persistence(build_rips(cloud, max_degree, "auto", budget), max_degree)


@dataclass
class DegreeReport:
    degree: int
    db_reduced: float
    bound_reduced: float
    db_center: float
    bound_center: float

    @property
    def margin_reduced(self) -> float:
        return self.bound_reduced - self.db_reduced

    @property
    def margin_center(self) -> float:
        return self.bound_center - self.db_center


@dataclass
class StabilityReport:
    m: int
    p: int
    delta: float
    strategy: str
    reduced_count: int
    dh_reduced: float
    dh_center: float
    seed: int | None = None
    rate: float | None = None
    degrees: list[DegreeReport] = field(default_factory=list)

    def bounds_hold(self, slack: float = SLACK) -> bool:
        return all(d.margin_reduced >= -slack and d.margin_center >= -slack for d in self.degrees)

    def chain_holds(self, slack: float = SLACK) -> bool:
        """Bottleneck distances never exceed the Hausdorff distances."""
        return all(
            d.db_reduced <= self.dh_reduced + slack and d.db_center <= self.dh_center + slack
            for d in self.degrees
        )

    def rows(self) -> list[dict]:
        head = {k: v for k, v in asdict(self).items() if k != "degrees"}
        out = []
        for d in self.degrees:
            row = dict(head, **asdict(d))
            row["margin_reduced"] = d.margin_reduced
            row["margin_center"] = d.margin_center
            out.append({k: row[k] for k in CSV_FIELDS})
        return out


def verify_stability(
    cloud: ArrayLike,
    delta: float,
    max_degree: int = 1,
    strategy: cla.Strategy | str = cla.Strategy.CENTER,
    *,
    seed: int | None = None,
    rate: float | None = None,
    budget: int = DEFAULT_BUDGET,
    base: list[Barcode] | None = None,
    center: tuple | None = None,
) -> StabilityReport:
    """Run the full pipeline on ``X``, ``X*`` and ``Xc`` and report both
    bounds per degree.

    ``base`` and ``center`` let callers reuse the barcodes of ``X`` and the
    ``(cloud, barcodes)`` of ``Xc`` across strategies.
    """
    cloud = _nonempty(cloud)
    strategy = cla.Strategy(strategy)
    m = cloud.shape[1]
    if base is None:
        base = barcodes_of(cloud, max_degree, budget)
    if center is None:
        xc = cla.reduce(cloud, delta, cla.Strategy.CENTER)
        center = (xc, barcodes_of(xc, max_degree, budget))
    xc, bc = center
    if strategy is cla.Strategy.CENTER:
        xs, bs = xc, bc
    else:
        xs = cla.reduce(cloud, delta, strategy)
        bs = barcodes_of(xs, max_degree, budget)

    report = StabilityReport(
        m=m,
        p=cloud.shape[0],
        delta=float(delta),
        strategy=strategy.value,
        reduced_count=xs.shape[0],
        dh_reduced=hausdorff_distance(cloud, xs),
        dh_center=hausdorff_distance(xs, xc),
        seed=seed,
        rate=rate,
    )
    root_m = math.sqrt(m)
    for k in range(max_degree + 1):
        report.degrees.append(
            DegreeReport(
                degree=k,
                db_reduced=bottleneck_distance(base[k], bs[k]),
                bound_reduced=root_m * delta,
                db_center=bottleneck_distance(bs[k], bc[k]),
                bound_center=root_m * delta / 2,
            )
        )
    return report


def _grid_cell(args) -> list[StabilityReport]:
    m, p, seed, rates, strategies, max_degree, kind, tolerance, budget = args
    cloud = GeneratorSpec(kind, m, p, seed).generate()
    base = barcodes_of(cloud, max_degree, budget)
    reports = []
    for rate in rates:
        try:
            delta = cla.delta_for_rate(cloud, rate, tolerance).delta
        except NoSolutionError as exc:
            # any delta is a valid test case; fall back to the closest one
            delta = exc.closest_delta
        xc = cla.reduce(cloud, delta, cla.Strategy.CENTER)
        center = (xc, barcodes_of(xc, max_degree, budget))
        for strategy in strategies:
            reports.append(
                verify_stability(
                    cloud, delta, max_degree, strategy,
                    seed=seed, rate=rate, budget=budget, base=base, center=center,
                )
            )
    return reports


def run_grid(
    dims: Sequence[int],
    counts: Sequence[int],
    rates: Sequence[float],
    seeds: Iterable[int],
    strategies: Sequence[cla.Strategy | str] = tuple(cla.Strategy),
    max_degree: int = 1,
    kind: str = "random",
    tolerance: float = 0.05,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[StabilityReport]:
    """Verify every (dim, count, seed, rate, strategy) cell.

    Clouds are generated from :class:`GeneratorSpec` and normalized to the
    ``[0, 100]`` box. Reports come back sorted by (m, p, seed, rate,
    strategy order) regardless of ``jobs``.
    """
    strategies = [cla.Strategy(s) for s in strategies]
    cells = [
        (m, p, seed, list(rates), strategies, max_degree, kind, tolerance, budget)
        for m, p, seed in itertools.product(dims, counts, seeds)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_grid_cell, cells))
    else:
        chunks = [_grid_cell(c) for c in cells]
    return [r for chunk in chunks for r in chunk]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return "" if value is None else str(value)


def format_reports(reports: Iterable[StabilityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for report in reports:
        for row in report.rows():
            writer.writerow([_fmt(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def summarize(reports: Sequence[StabilityReport]) -> dict:
    rows = [d for r in reports for d in r.degrees]
    return {
        "cells": len(rows),
        "bound_reduced_violations": sum(d.margin_reduced < -SLACK for d in rows),
        "bound_center_violations": sum(d.margin_center < -SLACK for d in rows),
        "chain_violations": sum(not r.chain_holds() for r in reports),
        "min_margin_reduced": min((d.margin_reduced for d in rows), default=np.nan),
        "min_margin_center": min((d.margin_center for d in rows), default=np.nan),
    }
