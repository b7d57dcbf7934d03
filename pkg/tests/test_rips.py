import itertools
import math

import numpy as np
import pytest

from clatda.errors import DomainError, ResourceLimitError
from clatda.rips import DIAMETER_PER_SCALE, auto_scale, build_rips
from clatda.geometry import pairwise_distances


def subset_oracle(cloud, dim_cap, scale):
    """Every vertex subset of size <= dim_cap + 1 whose diameter fits."""
    n = cloud.shape[0]
    d = np.linalg.norm(cloud[:, None] - cloud[None], axis=2)
    out = {}
    for size in range(1, dim_cap + 2):
        for sub in itertools.combinations(range(n), size):
            value = max((d[i, j] for i, j in itertools.combinations(sub, 2)), default=0.0) / 2
            if value <= scale:
                out[sub] = value
    return out


def test_two_points():
    c = build_rips([[0.0, 0.0], [3.0, 4.0]], 1, max_scale=10.0)
    assert dict(c) == {(0,): 0.0, (1,): 0.0, (0, 1): 2.5}


def test_equilateral_triangle_enters_together():
    s = 2.0
    tri = [[0, 0], [s, 0], [s / 2, s * math.sqrt(3) / 2]]
    c = build_rips(tri, 1, max_scale=5.0)
    vals = dict(c)
    edges = [vals[e] for e in [(0, 1), (0, 2), (1, 2)]]
    assert edges == pytest.approx([1.0] * 3, abs=1e-12)
    assert vals[(0, 1, 2)] == max(edges)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("dim_cap", [1, 2, 3])
def test_matches_subset_oracle(seed, dim_cap):
    rng = np.random.default_rng(seed)
    cloud = rng.random((12, 2 + seed % 2))
    scale = 0.35
    c = build_rips(cloud, dim_cap - 1, max_scale=scale)
    got = dict(c)
    want = subset_oracle(cloud, dim_cap, scale)
    assert got.keys() == want.keys()
    for k, v in want.items():
        assert got[k] == pytest.approx(v, abs=1e-12)


def test_face_values_and_order(rng):
    cloud = rng.random((25, 3))
    c = build_rips(cloud, 2, "auto")
    for dim in range(1, c.dim_cap + 1):
        faces = c.faces(dim)
        assert np.all(c.values[dim - 1][faces] <= c.values[dim][:, None])
        assert np.all(np.diff(c.values[dim]) >= 0)
    values = [v for _, v in c]
    assert values == sorted(values)


def test_sublevel_sets_nest(rng):
    cloud = rng.random((15, 2))
    full = dict(build_rips(cloud, 1, max_scale=1.0))
    levels = sorted(set(full.values()))
    prev = set()
    for eps in levels:
        now = {s for s, v in full.items() if v <= eps}
        assert prev <= now
        prev = now


def test_edges_and_vertex_count(rng):
    cloud = rng.random((30, 2))
    scale = 0.2
    c = build_rips(cloud, 1, max_scale=scale)
    d = pairwise_distances(cloud)
    assert c.count(0) == 30
    expected = {(i, j) for i in range(30) for j in range(i + 1, 30) if d[i, j] / DIAMETER_PER_SCALE <= scale}
    assert {tuple(e) for e in c.simplices[1].tolist()} == expected


def test_auto_scale_is_cone_point(rng):
    cloud = rng.random((20, 2))
    d = pairwise_distances(cloud)
    c = build_rips(cloud, 1)
    assert c.scale_cap == auto_scale(d) == d.max(axis=1).min() / 2


def test_budget_and_errors(rng):
    cloud = rng.random((40, 2))
    with pytest.raises(ResourceLimitError) as info:
        build_rips(cloud, 2, budget=100)
    assert info.value.budget == 100
    assert "100" in str(info.value)
    with pytest.raises(DomainError):
        build_rips(cloud, -1)
    with pytest.raises(DomainError):
        build_rips(cloud, 1, max_scale="huge")


def test_dump_format():
    c = build_rips([[0.0], [1.0]], 0, max_scale=1.0)
    assert c.dump() == "0 0 0\n0 0 1\n0.5 1 0 1\n"
