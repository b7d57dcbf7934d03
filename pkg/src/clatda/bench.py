"""Wall-clock timing of persistence with and without lattice reduction.

Each cell times ``reduce -> build_rips -> compute_persistence`` end to end and
keeps the fastest of ``repeats`` runs. Picking ``delta`` for a target rate is
done once per cell, outside the timed region.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
import time
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from . import cla
from .errors import DomainError, NoSolutionError, ResourceLimitError
from .persistence import compute_persistence
from .rips import DEFAULT_BUDGET, build_rips
from .synth import GeneratorSpec

log = logging.getLogger(__name__)

# radius-units scale caps for clouds in the [0, 100]^m box; the full Rips
# complex of a few thousand points does not fit in memory
DEFAULT_SCALE = {1: 2.0, 2: 5.0, 3: 12.0}


@dataclass
class TimingRecord:
    m: int
    p: int
    seed: int
    rate: float
    delta: float
    reduced_count: int
    simplex_count: int
    cla_seconds: float
    rips_seconds: float
    persistence_seconds: float
    total_seconds: float
    status: str = "ok"


CSV_FIELDS = [f.name for f in fields(TimingRecord)]


def _timed_run(cloud, delta, strategy, max_degree, scale, budget):
    t0 = time.perf_counter()
    reduced = cloud if delta is None else cla.reduce(cloud, delta, strategy)
    t1 = time.perf_counter()
    complex_ = build_rips(reduced, max_degree, scale, budget)
    t2 = time.perf_counter()
    compute_persistence(complex_, max_degree)
    t3 = time.perf_counter()
    return (t1 - t0, t2 - t1, t3 - t2, t3 - t0), reduced.shape[0], len(complex_)


def _warm_up() -> None:
    # keep numba compilation out of the first measured cell
    cloud = GeneratorSpec("random", 2, 12, 0).generate()
    compute_persistence(build_rips(cla.reduce(cloud, 10.0), 1), 1)


def bench_cell(
    cloud: np.ndarray,
    rate: float,
    *,
    seed: int = 0,
    repeats: int = 3,
    strategy: cla.Strategy | str = cla.Strategy.CENTER,
    max_degree: int = 1,
    max_scale: float | str | None = None,
    tolerance: float = 0.01,
    budget: int = DEFAULT_BUDGET,
) -> TimingRecord:
    p, m = cloud.shape
    scale = DEFAULT_SCALE.get(m, "auto") if max_scale is None else max_scale
    status = "ok"
    delta = None
    if rate != 0:
        try:
            delta = cla.delta_for_rate(cloud, rate, tolerance).delta
        except NoSolutionError as exc:
            delta, status = exc.closest_delta, "rate-miss"
        except DomainError:
            # coincident points: every lattice keeps exactly one
            delta, status = 1.0, "rate-miss"
    best = None
    try:
        for _ in range(max(1, repeats)):
            times, reduced_count, size = _timed_run(cloud, delta, strategy, max_degree, scale, budget)
            if best is None or times[3] < best[0][3]:
                best = (times, reduced_count, size)
    except ResourceLimitError:
        if rate != 0:
            raise
        log.warning("m=%d p=%d seed=%d: no-reduction run exceeds the simplex budget", m, p, seed)
        nan = float("nan")
        return TimingRecord(m, p, seed, 0.0, 0.0, p, 0, nan, nan, nan, nan, status="infeasible")
    times, reduced_count, size = best
    return TimingRecord(
        m, p, seed, float(rate), 0.0 if delta is None else delta, reduced_count, size,
        *times, status=status,
    )


def run_bench(
    dims: Sequence[int],
    counts: Sequence[int],
    rates: Sequence[float],
    seeds: Iterable[int],
    repeats: int = 3,
    *,
    strategy: cla.Strategy | str = cla.Strategy.CENTER,
    max_degree: int = 1,
    max_scale: float | str | None = None,
    kind: str = "random",
    tolerance: float = 0.01,
    budget: int = DEFAULT_BUDGET,
) -> list[TimingRecord]:
    """Time every (dim, count, seed, rate) cell sequentially.

    ``rate == 0`` means no reduction. A no-reduction cell that exceeds the
    simplex budget is recorded with ``status="infeasible"``; reduced cells
    must fit.
    """
    _warm_up()
    records = []
    for m, p, seed in itertools.product(dims, counts, list(seeds)):
        cloud = GeneratorSpec(kind, m, p, seed).generate()
        for rate in rates:
            rec = bench_cell(
                cloud, rate, seed=seed, repeats=repeats, strategy=strategy,
                max_degree=max_degree, max_scale=max_scale, tolerance=tolerance, budget=budget,
            )
            log.info("m=%d p=%d seed=%d rate=%.2f: %.4fs (%s)", m, p, seed, rate, rec.total_seconds, rec.status)
            records.append(rec)
    return records


def format_records(records: Iterable[TimingRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        row = asdict(rec)
        writer.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in (row[k] for k in CSV_FIELDS)])
    return buf.getvalue()
