"""Partition-sum stochastic integrals and quadratic variation.

The Ito sum uses left endpoints; adaptedness of the integrand is enforced
structurally, by only accepting grid samples, never callables that could
peek ahead.  The Stratonovich sum uses averaged endpoints rather than
midpoint sampling: the averaged form converges under milder conditions
and needs no off-grid values.  Convergence of these sums is a limit in
probability, so all convergence tests live in seeded-ensemble experiments,
never as single-path assertions.
"""

import dataclasses

import numpy as np

from .errors import InputError


@dataclasses.dataclass
class Partition:
    """Strictly increasing grid 0 = t_0 < ... < t_N = T."""

    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 1 or len(self.points) < 2:
            raise InputError("partition needs at least two points")
        if np.any(np.diff(self.points) <= 0):
            raise InputError("partition points must be strictly increasing")

    @property
    def n_intervals(self):
        return len(self.points) - 1

    @property
    def mesh(self):
        return float(np.max(np.diff(self.points)))

    @property
    def uniform(self):
        d = np.diff(self.points)
        return bool(np.max(d) - np.min(d) <= 1e-12 * np.max(d))

    @classmethod
    def regular(cls, t_end, n):
        return cls(np.linspace(0.0, float(t_end), int(n) + 1))


def _check_pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise InputError("integrand and integrator must be 1-D samples")
    if len(x) != len(y):
        raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise InputError("need at least two grid samples")
    return x, y


def ito_sum(x, y):
    """Left-endpoint Riemann-Stieltjes sum:  sum_k x_k (y_{k+1} - y_k)."""
    x, y = _check_pair(x, y)
    return float(np.dot(x[:-1], np.diff(y)))


def right_endpoint_sum(x, y):
    """Right-endpoint sum; differs from ito_sum by sum_k (dx_k)(dy_k)."""
    x, y = _check_pair(x, y)
    return float(np.dot(x[1:], np.diff(y)))


def stratonovich_sum(x, y):
    """Averaged-endpoint sum:  sum_k (x_k + x_{k+1})/2 (y_{k+1} - y_k)."""
    x, y = _check_pair(x, y)
    return float(np.dot(0.5 * (x[:-1] + x[1:]), np.diff(y)))


def quadratic_variation(y):
    """Sum of squared increments over the sampling grid."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or len(y) < 2:
        raise InputError("need at least two grid samples")
    return float(np.sum(np.diff(y) ** 2))


def cross_variation(x, y):
    """Sum of products of increments, sum_k (dx_k)(dy_k)."""
    x, y = _check_pair(x, y)
    return float(np.dot(np.diff(x), np.diff(y)))
