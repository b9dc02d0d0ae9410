"""Sample-path containers and file I/O.

A Path stores grid points only; continuous-time presentation (linear or
geodesic interpolation between grid points) is a rendering concern handled
by `interpolate` at export time, never stored.

CSV layout: header ``t,c1,...,cK`` where K is the ambient coordinate count.
Matrix-valued points (SO(n)) are flattened column-major, so c1..cK reads
m11, m21, ..., mn1, m12, ...  Numbers are written in shortest round-trip
decimal form, which makes output bytes reproducible for a fixed seed.
"""

import dataclasses

import numpy as np

from .errors import InputError
from .manifolds import EPS_MEM, Manifold


@dataclasses.dataclass
class SimConfig:
    """Simulation horizon T, step dt, ensemble size and master seed.

    dt must divide T (within 1e-9 relative) so the grid lands exactly on T.
    """

    T: float
    dt: float
    n_paths: int = 1
    seed: int = 0

    def __post_init__(self):
        if not (self.T > 0):
            raise InputError(f"T must be positive, got {self.T}")
        if not (0 < self.dt <= self.T):
            raise InputError(f"dt must satisfy 0 < dt <= T, got {self.dt}")
        if self.n_paths < 1:
            raise InputError(f"n_paths must be >= 1, got {self.n_paths}")
        steps = self.T / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise InputError(f"dt={self.dt} does not divide T={self.T}")

    @property
    def n_steps(self):
        return int(round(self.T / self.dt))

    def times(self):
        return np.linspace(0.0, self.T, self.n_steps + 1)


@dataclasses.dataclass
class Path:
    """Realization of a process: time grid plus points in ambient coordinates."""

    manifold: Manifold
    times: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if self.times.ndim != 1 or len(self.times) < 1:
            raise InputError("times must be a non-empty 1-D array")
        if len(self.times) != len(self.points):
            raise InputError(
                f"{len(self.times)} times vs {len(self.points)} points")
        if np.any(np.diff(self.times) <= 0):
            raise InputError("times must be strictly increasing")
        if self.points.shape[1:] != self.manifold.ambient_shape:
            raise InputError(
                f"point shape {self.points.shape[1:]} does not match "
                f"{self.manifold} ambient shape {self.manifold.ambient_shape}")

    def __len__(self):
        return len(self.times)

    def max_membership_error(self):
        return max(self.manifold.membership_error(p) for p in self.points)

    def check_membership(self, tol=EPS_MEM):
        err = self.max_membership_error()
        if err > tol:
            raise InputError(f"path leaves {self.manifold} by {err:.3e}")

    def flat_points(self):
        """Points flattened to shape (len, K), matrices in column-major order."""
        if self.points.ndim == 3:
            return self.points.transpose(0, 2, 1).reshape(len(self), -1)
        return self.points


def interpolate(path, t):
    """Point at time t by geodesic interpolation between grid neighbours
    (linear interpolation on Euclidean space).  Rendering helper only."""
    times = path.times
    if not (times[0] <= t <= times[-1]):
        raise InputError(f"t={t} outside path range [{times[0]}, {times[-1]}]")
    k = int(np.searchsorted(times, t, side="right") - 1)
    if k >= len(times) - 1:
        return path.points[-1].copy()
    alpha = (t - times[k]) / (times[k + 1] - times[k])
    p, q = path.points[k], path.points[k + 1]
    v = path.manifold.log(p, q)
    return path.manifold.exp(p, alpha * v)


def _fmt(x):
    return repr(float(x))


def _header(k):
    return "t," + ",".join(f"c{i+1}" for i in range(k))


def write_path_csv(path, file):
    """Single path as CSV with header t,c1,...,cK."""
    flat = path.flat_points()
    with open(file, "w") as fh:
        fh.write(_header(flat.shape[1]) + "\n")
        for t, row in zip(path.times, flat):
            fh.write(_fmt(t) + "," + ",".join(_fmt(x) for x in row) + "\n")


def write_paths_csv(paths, file):
    """Many paths in long format: path_id,t,c1,...,cK."""
    if not paths:
        raise InputError("no paths to write")
    flat0 = paths[0].flat_points()
    with open(file, "w") as fh:
        fh.write("path_id," + _header(flat0.shape[1]) + "\n")
        for i, path in enumerate(paths):
            for t, row in zip(path.times, path.flat_points()):
                fh.write(f"{i}," + _fmt(t) + ","
                         + ",".join(_fmt(x) for x in row) + "\n")


def read_path_csv(file, manifold):
    """Inverse of write_path_csv."""
    data = np.loadtxt(file, delimiter=",", skiprows=1, ndmin=2)
    times, flat = data[:, 0], data[:, 1:]
    shape = manifold.ambient_shape
    if len(shape) == 2:
        pts = flat.reshape(len(flat), shape[1], shape[0]).transpose(0, 2, 1)
    else:
        pts = flat
    return Path(manifold, times, pts)
