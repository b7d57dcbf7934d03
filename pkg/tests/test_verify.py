import math

import numpy as np
import pytest

from clatda import cla
from clatda.synth import GeneratorSpec
from clatda.verify import CSV_FIELDS, format_reports, run_grid, summarize, verify_stability


def test_single_point_is_trivial():
    report = verify_stability([[3.0, 4.0]], 1.0, 1)
    assert report.bounds_hold() and report.chain_holds()
    assert all(d.db_reduced == 0 and d.db_center == 0 for d in report.degrees)
    # the center of the cell holding (3, 4) is (3.5, 4.5)
    assert report.dh_reduced == pytest.approx(math.sqrt(0.5), abs=1e-15)


@pytest.mark.parametrize("strategy", list(cla.Strategy))
def test_random_cloud_margins(strategy):
    cloud = GeneratorSpec("random", 2, 100, 11).generate()
    delta = cla.delta_for_rate(cloud, 0.3, 0.05).delta
    report = verify_stability(cloud, delta, 1, strategy)
    assert report.bounds_hold() and report.chain_holds()
    assert [d.degree for d in report.degrees] == [0, 1]
    for d in report.degrees:
        assert d.margin_reduced >= 0 and d.margin_center >= 0
        if strategy is cla.Strategy.CENTER:
            assert d.db_center == 0


def test_grid_rows_and_summary():
    reports = run_grid([2], [30], [0.3], [0, 1], strategies=["first", "center"])
    assert [(r.seed, r.strategy) for r in reports] == [(0, "first"), (0, "center"), (1, "first"), (1, "center")]
    text = format_reports(reports)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert len(lines) == 1 + 4 * 2
    s = summarize(reports)
    assert s["cells"] == 8
    assert s["bound_reduced_violations"] == s["bound_center_violations"] == s["chain_violations"] == 0
    assert format_reports(run_grid([2], [30], [0.3], [0, 1], strategies=["first", "center"])) == text


def test_grid_parallel_matches_serial():
    args = ([2], [25], [0.1, 0.5], [3, 4])
    assert format_reports(run_grid(*args, jobs=2)) == format_reports(run_grid(*args))
