"""Point sets in a box: fill distance, separation radius, cube partition.

The fill distance h = sup_x min_xi |x - xi| over the domain is estimated on
a candidate grid with an explicit slack bound; the separation radius
q = half the minimum pairwise distance is exact.  Quasi-uniform sets are
generated by jittering a lattice with a counter-based RNG so the result
depends only on (seed, lattice index).

The cube partition splits R^d into half-open cubes [c - s/2, c + s/2)
centered at the lattice s*Z^d; local stars are anchored at cube centers so
that every t in a given cube sees the same star.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "Box",
    "PointSet",
    "EmptyStarError",
    "make_quasi_uniform",
    "fill_distance",
    "separation_radius",
    "local_star",
    "cube_index",
    "cube_center",
    "save_pointset",
    "load_pointset",
]


class EmptyStarError(RuntimeError):
    """No points fell inside the requested star; enlarge the radius."""


@dataclass(frozen=True)
class Box:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners must have equal dimension")
        if any(b <= a for a, b in zip(self.lo, self.hi)):
            raise ValueError("box must have positive extent in every axis")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def sides(self) -> np.ndarray:
        return np.asarray(self.hi) - np.asarray(self.lo)

    def pad(self, amount: float) -> "Box":
        return Box(tuple(a - amount for a in self.lo), tuple(b + amount for b in self.hi))

    def candidate_grid(self, resolution: float, max_nodes: int = 4_000_000) -> np.ndarray:
        """Uniform grid of spacing <= resolution covering the box."""
        counts = [int(np.ceil(s / resolution)) + 1 for s in self.sides]
        total = int(np.prod(counts))
        if total > max_nodes:
            raise ValueError(f"candidate grid would need {total} nodes; "
                             "coarsen the resolution")
        axes = [np.linspace(a, b, n) for a, b, n in zip(self.lo, self.hi, counts)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


def cube_index(t: np.ndarray, side: float) -> tuple[int, ...]:
    """Index of the half-open cube [c - side/2, c + side/2) containing t."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return tuple(int(i) for i in np.floor(t / side + 0.5))


def cube_center(idx: tuple[int, ...], side: float) -> np.ndarray:
    return np.asarray(idx, dtype=float) * side


@dataclass(frozen=True, eq=False)
class PointSet:
    """Scattered points with cached density functionals and a cube index."""

    points: np.ndarray            # (n, d)
    domain: Box
    h: float                      # fill distance w.r.t. domain
    h_slack: float                # upper error bound of the h estimate
    q: float                      # separation radius (exact)
    seed: int | None = None
    jitter: float = 0.0
    _grid: dict = field(default_factory=dict, repr=False, compare=False)
    _grid_side: float = field(default=0.0, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def rho(self) -> float:
        return self.h / self.q

    def grid_index(self, side: float | None = None) -> dict:
        """Cube partition of the points; rebuilt if the side changes."""
        side = self.h if side is None else float(side)
        if not self._grid or self._grid_side != side:
            table: dict[tuple[int, ...], list[int]] = {}
            for i, p in enumerate(self.points):
                table.setdefault(cube_index(p, side), []).append(i)
            object.__setattr__(self, "_grid", {k: np.asarray(v) for k, v in table.items()})
            object.__setattr__(self, "_grid_side", side)
        return self._grid

    def within_ball(self, center: np.ndarray, radius: float) -> np.ndarray:
        """Indices of points with |p - center| <= radius, via the cube index."""
        side = self.h if self._grid_side == 0.0 else self._grid_side
        grid = self.grid_index(side)
        center = np.asarray(center, dtype=float)
        lo = np.floor((center - radius) / side + 0.5).astype(int)
        hi = np.floor((center + radius) / side + 0.5).astype(int)
        hits = []
        for idx in np.ndindex(*(hi - lo + 1)):
            cell = tuple(lo + np.asarray(idx))
            if cell in grid:
                hits.append(grid[cell])
        if not hits:
            return np.empty(0, dtype=int)
        cand = np.concatenate(hits)
        dist = np.linalg.norm(self.points[cand] - center, axis=1)
        return cand[dist <= radius]


def fill_distance(points: np.ndarray, domain: Box, resolution: float,
                  return_slack: bool = False):
    """Estimate sup over the domain of the distance to the nearest point.

    The supremum is taken over a candidate grid of spacing <= resolution;
    the true fill distance exceeds the estimate by at most the reported
    slack resolution * sqrt(d).
    """
    points = np.atleast_2d(points)
    if points.shape[0] == 0:
        raise ValueError("empty point set")
    tree = cKDTree(points)
    grid = domain.candidate_grid(resolution)
    dist, _ = tree.query(grid, k=1)
    h = float(dist.max())
    slack = resolution * np.sqrt(domain.dim)
    return (h, slack) if return_slack else h


def separation_radius(points: np.ndarray) -> float:
    """Half the minimum pairwise distance (exact, grid-accelerated)."""
    points = np.atleast_2d(points)
    if points.shape[0] < 2:
        raise ValueError("separation radius needs at least two points")
    tree = cKDTree(points)
    dist, _ = tree.query(points, k=2)
    qmin = float(dist[:, 1].min()) / 2.0
    if qmin == 0.0:
        raise ValueError("duplicate points: separation radius is zero")
    return qmin


def make_quasi_uniform(domain: Box, h_target: float, jitter: float = 0.0,
                       seed: int | None = 0, pad: float = 0.0,
                       resolution: float | None = None) -> PointSet:
    """Jittered lattice with spacing h_target covering the padded domain.

    Each lattice point moves by a uniform offset in
    [-jitter*h_target, jitter*h_target] per coordinate, drawn from a
    counter-based generator keyed by the seed, so the set is reproducible
    independent of evaluation order.  jitter < 0.5 guarantees no collisions.

    h_target must be smaller than the domain's shortest side; the returned
    PointSet caches the measured fill distance (w.r.t. the unpadded domain),
    separation radius, and mesh ratio.
    """
    if not 0.0 <= jitter <= 0.4:
        raise ValueError("jitter must lie in [0, 0.4]")
    if h_target >= min(domain.sides):
        raise ValueError("h_target must be smaller than the domain's shortest side")
    box = domain.pad(pad) if pad > 0 else domain
    axes = []
    for a, b in zip(box.lo, box.hi):
        n = max(1, round((b - a) / h_target))
        axes.append(np.linspace(a, b, n + 1))
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    if jitter > 0:
        rng = np.random.Generator(np.random.Philox(key=seed or 0))
        pts = pts + rng.uniform(-jitter * h_target, jitter * h_target, size=pts.shape)
    if resolution is None:
        resolution = h_target / 32.0 if domain.dim < 3 else h_target / 8.0
    h, slack = fill_distance(pts, domain, resolution, return_slack=True)
    q = separation_radius(pts)
    return PointSet(pts, domain, h, slack, q, seed=seed, jitter=jitter)


def local_star(t: np.ndarray, X: PointSet, c3: float,
               side: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Points of X within c3 * h of the center of t's cube.

    The star is anchored at the cube center (cubes of the given side,
    default the fill distance), so it is constant for all t in one cube.
    Returns (indices, points); raises EmptyStarError when no point
    qualifies, signalling that c3 is too small.
    """
    side = X.h if side is None else float(side)
    center = cube_center(cube_index(t, side), side)
    idx = X.within_ball(center, c3 * X.h)
    if idx.size == 0:
        raise EmptyStarError(
            f"no points within {c3} * h of cube center {center}; enlarge c3")
    return idx, X.points[idx]


def save_pointset(ps: PointSet, path: str | Path) -> None:
    """CSV dump (one row per point, header x0,x1,...) plus a JSON sidecar."""
    path = Path(path)
    header = ",".join(f"x{i}" for i in range(ps.dim))
    np.savetxt(path, ps.points, delimiter=",", header=header, comments="")
    meta = {
        "h": ps.h, "h_slack": ps.h_slack, "q": ps.q, "rho": ps.rho,
        "domain": {"lo": list(ps.domain.lo), "hi": list(ps.domain.hi)},
        "seed": ps.seed, "jitter": ps.jitter,
    }
    path.with_suffix(".meta.json").write_text(json.dumps(meta, indent=2))


def load_pointset(path: str | Path) -> PointSet:
    path = Path(path)
    pts = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    meta = json.loads(path.with_suffix(".meta.json").read_text())
    box = Box(tuple(meta["domain"]["lo"]), tuple(meta["domain"]["hi"]))
    return PointSet(pts, box, meta["h"], meta["h_slack"], meta["q"],
                    seed=meta.get("seed"), jitter=meta.get("jitter", 0.0))
