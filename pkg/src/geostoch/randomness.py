"""Reproducible Gaussian variate streams and structured Gaussian sampling.

Streams are counter-based (Philox keyed by (master_seed, stream_id)), so
any number of per-path or per-sample streams can be created independently
without coordination and yield the same draws regardless of creation order
or thread schedule.  A stream is single-owner: never draw from one stream
concurrently; use distinct stream ids instead.
"""

import numpy as np

from .errors import InputError
from .manifolds import Euclidean, SpecialOrthogonal, Sphere

_MASK64 = (1 << 64) - 1


class GaussianStream:
    """Deterministic standard-normal stream addressed by (master_seed, stream_id)."""

    def __init__(self, master_seed=0, stream_id=0):
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        key = [self.master_seed & _MASK64, self.stream_id & _MASK64]
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def normal(self, size=None):
        """Standard normal variates; advances the stream."""
        return self._gen.standard_normal(size)

    def substream(self, stream_id):
        """Fresh stream under the same master seed."""
        return GaussianStream(self.master_seed, stream_id)

    def __repr__(self):
        return f"GaussianStream(master_seed={self.master_seed}, stream_id={self.stream_id})"


def next_gaussian(stream):
    """Single standard normal variate from the stream."""
    return float(stream.normal())


class ColourSpec:
    """Covariance matrix C for coloured noise, with a cached factor L, L L^T = C.

    C must be symmetric (within 1e-12 relative) and positive semidefinite;
    eigenvalues within -1e-12 of zero are clamped to zero before
    factorization, so degenerate (rank-deficient) colours are allowed.
    """

    def __init__(self, c):
        c = np.atleast_2d(np.asarray(c, dtype=float))
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise InputError(f"covariance must be square, got shape {c.shape}")
        scale = max(1.0, float(np.abs(c).max()))
        if np.abs(c - c.T).max() > 1e-12 * scale:
            raise InputError("covariance must be symmetric")
        w, v = np.linalg.eigh(0.5 * (c + c.T))
        if w.min() < -1e-12 * scale:
            raise InputError(f"covariance is not PSD (eigenvalues {w})")
        w = np.clip(w, 0.0, None)
        self.c = c
        self.factor = v * np.sqrt(w)  # columns scaled: L = V diag(sqrt(w))

    @property
    def d(self):
        return self.c.shape[0]

    @classmethod
    def isotropic(cls, d, variance=1.0):
        return cls(variance * np.eye(d))

    def __repr__(self):
        return f"ColourSpec(d={self.d})"


def sample_coloured(spec, stream):
    """One draw from N(0, C): L z with z standard normal."""
    return spec.factor @ stream.normal(spec.d)


def sample_tangent_gaussian(manifold, p, stream):
    """Standard Gaussian on the tangent space at p (variance 1 per tangent
    dimension), obtained by projecting an ambient standard normal draw.

    On SO(n) the projection is rescaled by sqrt(2) so that the coefficients
    with respect to the (1/2)tr-orthonormal basis of p*so(n) have unit
    variance; the ambient skew projection alone would give variance 1/2.
    """
    if isinstance(manifold, Euclidean):
        return stream.normal(manifold.n)
    if isinstance(manifold, Sphere):
        return manifold.project_tangent(p, stream.normal(manifold.n))
    if isinstance(manifold, SpecialOrthogonal):
        z = stream.normal((manifold.n, manifold.n))
        return np.sqrt(2.0) * manifold.project_tangent(p, z)
    raise InputError(f"no tangent sampler for manifold {manifold!r}")
