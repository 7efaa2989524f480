"""Shared test utilities: reference polynomials and convolution trials."""

from fractions import Fraction

import numpy as np

from rbfbench._exact import binomial_one_minus_r, poly_mul, poly_trim
from rbfbench.spectral import FiniteMeasure, measure_convolve

# Classical tabulated Wendland polynomials: (d, k) -> (base power, factor poly).
# Entry (d, k): (1 - r)^power * poly(r), equality up to a positive constant.
TABULATED_WENDLAND = {
    (1, 0): (1, (1,)),
    (1, 1): (3, (1, 3)),
    (1, 2): (5, (1, 5, 8)),
    (3, 0): (2, (1,)),
    (3, 1): (4, (1, 4)),
    (3, 2): (6, (3, 18, 35)),
    (3, 3): (8, (1, 8, 25, 32)),
}


def tabulated_poly(d: int, k: int):
    """Expanded exact coefficients of the tabulated form."""
    power, factor = TABULATED_WENDLAND[(d, k)]
    return poly_mul(binomial_one_minus_r(power),
                    poly_trim([Fraction(c) for c in factor]))


def proportionality_factor(p, q):
    """The scalar lam with p = lam * q, or None if the polys are not parallel."""
    if len(p) != len(q):
        return None
    lam = None
    for a, b in zip(p, q):
        if (a == 0) != (b == 0):
            return None
        if b != 0:
            if lam is None:
                lam = a / b
            elif a != lam * b:
                return None
    return lam


class PiecewiseLinear:
    """Random piecewise-linear test function on a compact interval."""

    def __init__(self, rng, n_knots=40, lo=-2.0, hi=2.0):
        inner = np.sort(rng.uniform(lo, hi, size=n_knots - 2))
        self.knots = np.concatenate([[lo], inner, [hi]])
        self.vals = rng.normal(size=n_knots)
        self.vals[0] = self.vals[-1] = 0.0
        self.lo, self.hi = lo, hi

    def __call__(self, x):
        return np.interp(x, self.knots, self.vals, left=0.0, right=0.0)

    def norm(self, x_grid, weights, p):
        v = np.abs(self(x_grid))
        if np.isinf(p):
            return max(float(np.abs(self.vals).max()), float(v.max()))
        return float(np.sum(weights * v ** p) ** (1.0 / p))


def young_trials(mu: FiniteMeasure, n_trials: int, seed: int = 0,
                 rel_slack: float = 1e-10):
    """Run convolution-inequality trials; return the list of margins.

    Each margin is ||f * mu||_p - ||f||_p ||mu||; the inequality holds when
    every margin is <= rel_slack * rhs.
    """
    rng = np.random.default_rng(seed)
    p_cycle = [1.0, 2.0, np.inf]
    margins = []
    sup = mu.support_radius
    for trial in range(n_trials):
        p = p_cycle[trial % 3]
        f = PiecewiseLinear(rng)
        span = 3.5 + sup
        x = np.linspace(-span, span, 2801)
        w = np.full(x.size, x[1] - x[0])
        w[0] = w[-1] = (x[1] - x[0]) / 2.0
        conv = measure_convolve(mu, f, x)
        if np.isinf(p):
            lhs = float(np.abs(conv).max())
        else:
            lhs = float(np.sum(w * np.abs(conv) ** p) ** (1.0 / p))
        rhs = f.norm(x, w, p) * mu.tv_norm
        margins.append((lhs - rhs, rhs, p))
    return margins
