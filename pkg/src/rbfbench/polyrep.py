"""Local polynomial reproduction functionals and the kernel error scan.

For each cube Q of the partition, the points of X within c3 * h of the cube
center form the star X(t) shared by every t in Q.  The functional

    lambda_t = sum_{xi in X(t)} A(t, xi) delta_xi,
    lambda_t(p) = p(t) for every polynomial p of total degree <= degree,

is realized by the minimum-norm solution A(t, .) = pinv(M) beta(t) of the
underdetermined system M A = beta, where M_{i,j} = p_i(xi_j) on a monomial
basis shifted to the cube center and scaled by c3 * h for conditioning.
The pseudo-inverse makes A continuous in t within each cube and keeps the
functional norm small.

Substituting kernel translates for point evaluations gives the surrogate
K(x, t) = sum A(t, xi) Phi(x - xi); the scan records how the error kernel
E(x, t) = Phi(x - t) - K(x, t) compares to h^(kappa - d) (1 + |x-t|/h)^(-l).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .geometry import PointSet, cube_center, cube_index

__all__ = [
    "ReproFunctional",
    "ErrorKernelScan",
    "UnisolvencyError",
    "LocalPolyBuilder",
    "build_functional",
    "kernel_K",
    "property2_scan",
    "monomial_exponents",
]


class UnisolvencyError(RuntimeError):
    """The local star cannot reproduce the requested polynomial degree."""


def monomial_exponents(dim: int, degree: int) -> list[tuple[int, ...]]:
    """Multi-indices of total degree <= degree, graded order."""
    out = []
    for total in range(degree + 1):
        for combo in product(range(total + 1), repeat=dim):
            if sum(combo) == total:
                out.append(combo)
    return out


def _basis_matrix(pts: np.ndarray, anchor: np.ndarray, scale: float,
                  exponents: list[tuple[int, ...]]) -> np.ndarray:
    """Rows p_i((pts - anchor)/scale) for the shifted-scaled monomials."""
    z = (pts - anchor) / scale
    rows = []
    for e in exponents:
        col = np.ones(z.shape[0])
        for axis, power in enumerate(e):
            if power:
                col = col * z[:, axis] ** power
        rows.append(col)
    return np.asarray(rows)


@dataclass(frozen=True, eq=False)
class ReproFunctional:
    """Point-evaluation weights realizing polynomial reproduction at t."""

    t: np.ndarray
    star: np.ndarray              # indices into the point set
    points: np.ndarray            # star coordinates, (n_star, d)
    weights: np.ndarray           # A(t, xi)
    degree: int
    anchor: np.ndarray            # cube center the star is anchored at
    c3_used: float

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.weights).sum())

    def apply(self, values: np.ndarray) -> float:
        """lambda_t applied to samples of a function at the star points."""
        return float(self.weights @ values)


class LocalPolyBuilder:
    """Builds and caches reproduction functionals, one linear map per cube.

    On rank deficiency or an l1 norm above c2_cap, the star radius factor is
    enlarged by 1.5 and the cube rebuilt, at most max_retries times.  Rank
    deficiency that survives all retries raises UnisolvencyError; an l1 norm
    still above the cap is reported on the functional, not raised.
    """

    def __init__(self, X: PointSet, degree: int, c3: float,
                 c2_cap: float = 2.0, max_retries: int = 4,
                 cube_side: float | None = None, svd_cutoff: float = 1e-10):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.X = X
        self.degree = degree
        self.c3 = float(c3)
        self.c2_cap = c2_cap
        self.max_retries = max_retries
        self.side = X.h if cube_side is None else float(cube_side)
        self.svd_cutoff = svd_cutoff
        self.exponents = monomial_exponents(X.dim, degree)
        self._cubes: dict[tuple[int, ...], tuple] = {}

    def cube_map(self, idx: tuple[int, ...]):
        """(star indices, pinv factor, anchor, scale, c3 used) for a cube."""
        hit = self._cubes.get(idx)
        if hit is not None:
            return hit
        anchor = cube_center(idx, self.side)
        c3 = self.c3
        last = None
        for _ in range(self.max_retries + 1):
            star = self.X.within_ball(anchor, c3 * self.X.h)
            if star.size < len(self.exponents):
                c3 *= 1.5
                continue
            pts = self.X.points[star]
            scale = c3 * self.X.h
            M = _basis_matrix(pts, anchor, scale, self.exponents)
            V = np.linalg.pinv(M, rcond=self.svd_cutoff)
            # Solvability and norm probe at the cube center and all cube
            # corners (the functional norm peaks towards the corners).
            corners = anchor + self.side / 2.0 * 0.999 * np.array(
                list(product((-1.0, 1.0), repeat=self.X.dim)))
            probes = np.vstack([anchor[None, :], corners])
            beta = _basis_matrix(probes, anchor, scale, self.exponents).T
            alpha = beta @ V.T                        # (n_probe, n_star)
            resid = np.abs(alpha @ M.T - beta).max()
            if resid > 1e-8:
                last = None
                c3 *= 1.5
                continue
            last = (star, V, anchor, scale, c3)
            if np.abs(alpha).sum(axis=1).max() > self.c2_cap:
                c3 *= 1.5
                continue
            break
        if last is None:
            raise UnisolvencyError(
                f"cube {idx} (center {anchor}): star cannot reproduce "
                f"degree {self.degree} after {self.max_retries} enlargements")
        self._cubes[idx] = last
        return last

    def functional_at(self, t: np.ndarray) -> ReproFunctional:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = cube_index(t, self.side)
        star, V, anchor, scale, c3 = self.cube_map(idx)
        beta = _basis_matrix(t[None, :], anchor, scale, self.exponents)[:, 0]
        weights = V @ beta
        return ReproFunctional(t, star, self.X.points[star], weights,
                               self.degree, anchor, c3)


def build_functional(t, X: PointSet, degree: int, c3: float,
                     c2_cap: float = 2.0) -> ReproFunctional:
    """One-off construction of the reproduction functional at t."""
    return LocalPolyBuilder(X, degree, c3, c2_cap).functional_at(t)


def kernel_K(x, Phi, F: ReproFunctional) -> np.ndarray | float:
    """Local surrogate K(x, t) = sum_xi A(t, xi) Phi(x - xi).

    x may be a single point or an (n, d) array of points.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim <= 1
    pts = np.atleast_2d(x)
    if pts.shape[1] != F.points.shape[1]:
        pts = pts.reshape(-1, F.points.shape[1])
    dist = np.linalg.norm(pts[:, None, :] - F.points[None, :, :], axis=-1)
    vals = Phi.profile(dist) @ F.weights
    return float(vals[0]) if single else vals


@dataclass(frozen=True, eq=False)
class ErrorKernelScan:
    """Stratified record of |E(x,t)| against the claimed envelope."""

    kernel_id: str
    h: float
    kappa: float
    ell: float
    x: np.ndarray
    t: np.ndarray
    dist_over_h: np.ndarray
    abs_e: np.ndarray
    bound: np.ndarray
    ratio: np.ndarray

    @property
    def c_emp(self) -> float:
        return float(self.ratio.max())


def property2_scan(Phi, X: PointSet, kappa: float, ell: float,
                   sample_budget: int, *, degree: int, c3: float,
                   seed: int = 0, far_limit: float | None = None) -> ErrorKernelScan:
    """Sample the error kernel and record C_emp = max |E| / envelope.

    (x, t) pairs are stratified by s = |x - t|/h over [0, s_max], where
    s_max covers the kernel support plus the star radius (or far_limit for
    kernels with unbounded support).  t is drawn uniformly in the domain.
    """
    d = X.dim
    h = X.h
    c1 = c3 + np.sqrt(d) / 2.0
    support = getattr(Phi, "support_radius", np.inf)
    if np.isinf(support):
        support = far_limit if far_limit is not None else 3.0
    s_max = (support + c1 * h) / h
    edges = [0.0, 0.5, 1.0]
    while edges[-1] < s_max:
        edges.append(min(edges[-1] * 2.0, s_max))
    builder = LocalPolyBuilder(X, degree, c3)
    rng = np.random.Generator(np.random.Philox(key=seed))
    lo = np.asarray(X.domain.lo)
    hi = np.asarray(X.domain.hi)
    n_per = max(8, sample_budget // (len(edges) - 1))
    xs, ts, ss, es = [], [], [], []
    for a, b in zip(edges[:-1], edges[1:]):
        for _ in range(n_per):
            t = rng.uniform(lo, hi)
            s = rng.uniform(a, b)
            u = rng.normal(size=d)
            u /= np.linalg.norm(u)
            x = t + s * h * u
            F = builder.functional_at(t)
            e = float(Phi.profile(np.linalg.norm(x - t)) - kernel_K(x, Phi, F))
            xs.append(x)
            ts.append(t)
            ss.append(s)
            es.append(abs(e))
    xs = np.asarray(xs)
    ts = np.asarray(ts)
    ss = np.asarray(ss)
    es = np.asarray(es)
    bound = h ** (kappa - d) * (1.0 + ss) ** (-ell)
    kid = getattr(Phi, "smoothness", None)
    kernel_id = (f"wendland_d{getattr(Phi, 'dim', d)}_k{kid}" if kid is not None
                 else f"sobolev_gamma{getattr(Phi, 'gamma', '?')}_d{d}")
    return ErrorKernelScan(kernel_id, h, kappa, ell, xs, ts, ss, es, bound, es / bound)
