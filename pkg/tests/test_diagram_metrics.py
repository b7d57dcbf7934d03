import math

import numpy as np
import pytest

from clatda.diagram_metrics import bottleneck_distance, bottleneck_matching, interval_distance
from clatda.errors import DomainError
from clatda.persistence import INF, Barcode

from oracles import brute_bottleneck, random_bars


def test_interval_distance_examples():
    assert interval_distance((1, 3), (1, 3)) == 0
    assert interval_distance((0, 2)) == 1
    assert interval_distance((0, 4), (1, 3)) == 1
    assert interval_distance((0, INF), (2, INF)) == 2
    assert interval_distance((0, INF), (0, 5)) == INF
    assert interval_distance((0, INF)) == INF


def test_bottleneck_examples():
    b = [(0, 4), (1, 2)]
    assert bottleneck_distance(b, b) == 0
    assert bottleneck_distance([(0, 4)], []) == 2
    assert bottleneck_distance([], []) == 0
    c = [(0.5, 4.5)]
    assert bottleneck_distance(b, c) == brute_bottleneck(b, c) == 0.5


def test_essential_bars():
    assert bottleneck_distance([(0, INF), (1, INF)], [(0.5, INF), (3, INF)]) == 2
    assert bottleneck_distance([(0, INF)], []) == INF
    assert bottleneck_distance([(0, INF), (0, 1)], [(0, INF)]) == 0.5


@pytest.mark.parametrize("seed", range(40))
def test_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    grid = 8 if seed % 2 else None
    ess = int(rng.integers(0, 2))
    a = random_bars(rng, int(rng.integers(0, 7 - ess)), ess, grid)
    b = random_bars(rng, int(rng.integers(0, 7 - ess)), ess, grid)
    assert bottleneck_distance(a, b) == brute_bottleneck(a, b)


@pytest.mark.parametrize("seed", range(20))
def test_metric_axioms(seed):
    rng = np.random.default_rng(1000 + seed)
    x, y, z = (random_bars(rng, int(rng.integers(0, 11))) for _ in range(3))
    dxy, dyx = bottleneck_distance(x, y), bottleneck_distance(y, x)
    assert dxy == dyx >= 0
    assert bottleneck_distance(x, x) == 0
    assert bottleneck_distance(x, z) <= dxy + bottleneck_distance(y, z) + 1e-9


@pytest.mark.parametrize("seed", range(20))
def test_value_is_a_candidate(seed):
    rng = np.random.default_rng(2000 + seed)
    a, b = random_bars(rng, 7), random_bars(rng, 5)
    value = bottleneck_distance(a, b)
    candidates = {0.0}
    candidates |= {interval_distance(i, j) for i in a for j in b}
    candidates |= {interval_distance(i) for i in a + b}
    assert value in candidates


@pytest.mark.parametrize("seed", range(10))
def test_matching_realizes_distance(seed):
    rng = np.random.default_rng(3000 + seed)
    a = Barcode(1, random_bars(rng, 6, 1))
    b = Barcode(1, random_bars(rng, 4, 1))
    value, matching = bottleneck_matching(a, b)
    assert value == bottleneck_distance(a, b)
    assert matching.cost == value
    left = [i for i, _ in matching.pairs] + matching.unmatched_left
    right = [j for _, j in matching.pairs] + matching.unmatched_right
    assert sorted(left) == list(range(len(a)))
    assert sorted(right) == list(range(len(b)))


def test_degree_mismatch():
    with pytest.raises(DomainError):
        bottleneck_distance(Barcode(0, []), Barcode(1, []))
    value, _ = bottleneck_matching(Barcode(0, [(0, INF)]), Barcode(0, []))
    assert math.isinf(value)
