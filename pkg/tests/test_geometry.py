"""Point-set generation, density functionals, and the cube partition."""

import numpy as np
import pytest
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from rbfbench.geometry import (
    Box,
    EmptyStarError,
    cube_center,
    cube_index,
    fill_distance,
    load_pointset,
    local_star,
    make_quasi_uniform,
    save_pointset,
    separation_radius,
)

UNIT_1D = Box((0.0,), (1.0,))
UNIT_2D = Box((0.0, 0.0), (1.0, 1.0))


def test_uniform_grid_1d():
    ps = make_quasi_uniform(UNIT_1D, 0.25)
    assert np.allclose(np.sort(ps.points.ravel()), [0.0, 0.25, 0.5, 0.75, 1.0])
    assert ps.h == pytest.approx(0.125, abs=ps.h_slack)
    assert ps.q == pytest.approx(0.125)


def test_uniform_grid_2d_fill_distance():
    s = 1.0 / 8.0
    ps = make_quasi_uniform(UNIT_2D, s)
    assert ps.h == pytest.approx(s * np.sqrt(2.0) / 2.0, abs=ps.h_slack)
    assert ps.q == pytest.approx(s / 2.0)


def test_determinism_under_fixed_seed():
    a = make_quasi_uniform(UNIT_2D, 1 / 8, jitter=0.25, seed=42)
    b = make_quasi_uniform(UNIT_2D, 1 / 8, jitter=0.25, seed=42)
    assert np.array_equal(a.points, b.points)
    c = make_quasi_uniform(UNIT_2D, 1 / 8, jitter=0.25, seed=43)
    assert not np.array_equal(a.points, c.points)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_jittered_sets_stay_quasi_uniform(seed):
    ps = make_quasi_uniform(UNIT_2D, 1 / 16, jitter=0.25, seed=seed)
    assert ps.rho < 4.0


def test_fill_distance_examples():
    pts = np.array([[0.0], [0.5], [1.0]])
    assert fill_distance(pts, UNIT_1D, 1e-4) == pytest.approx(0.25, abs=2e-4)
    assert fill_distance(np.array([[0.0]]), UNIT_1D, 1e-4) == pytest.approx(1.0, abs=2e-4)


def test_fill_distance_brute_force_oracle():
    rng = np.random.default_rng(11)
    pts = rng.uniform(0, 1, size=(50, 2))
    prod = fill_distance(pts, UNIT_2D, 1e-3)
    fine = UNIT_2D.candidate_grid(4e-4, max_nodes=10_000_000)
    brute = cKDTree(pts).query(fine)[0].max()
    assert abs(prod - brute) <= 1e-3 * np.sqrt(2.0)


def test_fill_distance_monotone_under_insertion():
    rng = np.random.default_rng(5)
    pts = rng.uniform(0, 1, size=(20, 2))
    h0 = fill_distance(pts, UNIT_2D, 1e-3)
    for _ in range(5):
        bigger = np.vstack([pts, rng.uniform(0, 1, size=(1, 2))])
        h1 = fill_distance(bigger, UNIT_2D, 1e-3)
        assert h1 <= h0 + 1e-12
        pts, h0 = bigger, h1


def test_separation_radius_examples_and_oracle():
    assert separation_radius(np.array([[0.0], [0.5], [1.0]])) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        separation_radius(np.array([[0.3]]))
    with pytest.raises(ValueError):
        separation_radius(np.array([[0.3], [0.3]]))
    rng = np.random.default_rng(2)
    pts = rng.uniform(0, 1, size=(1000, 2))
    assert separation_radius(pts) == pytest.approx(pdist(pts).min() / 2.0, rel=1e-14)


def test_local_star_counts_on_uniform_grid():
    s = 0.1
    ps = make_quasi_uniform(UNIT_1D, s)
    # cube side s anchors cubes on the data lattice; radius 1.1 s gives the
    # three nearest points for interior cubes.
    idx, pts = local_star(np.array([0.52]), ps, c3=1.1 * s / ps.h, side=s)
    assert len(idx) == 3
    assert np.allclose(np.sort(pts.ravel()), [0.4, 0.5, 0.6])


def test_local_star_members_within_radius():
    ps = make_quasi_uniform(UNIT_2D, 1 / 8, jitter=0.2, seed=3)
    t = np.array([0.41, 0.77])
    c3 = 3.0
    idx, pts = local_star(t, ps, c3)
    center = cube_center(cube_index(t, ps.h), ps.h)
    assert np.all(np.linalg.norm(pts - center, axis=1) <= c3 * ps.h + 1e-12)


def test_local_star_constant_within_cube():
    ps = make_quasi_uniform(UNIT_1D, 1 / 16, jitter=0.25, seed=9)
    side = ps.h
    base = cube_center(cube_index(np.array([0.5]), side), side)
    rng = np.random.default_rng(0)
    ref = None
    for _ in range(10):
        t = base + (rng.uniform(-0.5, 0.5)) * side * 0.999
        idx, _ = local_star(t, ps, c3=4.0)
        if ref is None:
            ref = idx
        assert np.array_equal(ref, idx)


def test_cube_assignment_half_open():
    side = 0.25
    # A point exactly on a cube face belongs to the cube on its upper side.
    boundary = side / 2.0
    assert cube_index(np.array([boundary]), side) == (1,)
    assert cube_index(np.array([boundary - 1e-12]), side) == (0,)


def test_empty_star_raises():
    ps = make_quasi_uniform(UNIT_1D, 1 / 4)
    # t = 0.4 sits in a cube whose center (0.375) is not a data point.
    with pytest.raises(EmptyStarError):
        local_star(np.array([0.4]), ps, c3=1e-6)


def test_generator_guards():
    with pytest.raises(ValueError):
        make_quasi_uniform(UNIT_1D, 2.0)
    with pytest.raises(ValueError):
        make_quasi_uniform(UNIT_1D, 0.25, jitter=0.5)


def test_csv_roundtrip(tmp_path):
    ps = make_quasi_uniform(UNIT_2D, 1 / 8, jitter=0.25, seed=4)
    path = tmp_path / "points.csv"
    save_pointset(ps, path)
    header = path.read_text().splitlines()[0]
    assert header == "x0,x1"
    loaded = load_pointset(path)
    assert np.allclose(loaded.points, ps.points)
    assert loaded.h == ps.h and loaded.q == ps.q and loaded.seed == ps.seed
