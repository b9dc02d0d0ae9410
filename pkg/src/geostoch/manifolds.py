"""Embedded manifolds: Euclidean space, unit spheres, and rotation groups.

Points and tangent vectors are plain numpy arrays in ambient coordinates
(vectors of length n, or n x n matrices for SO(n)).  Every manifold knows
how to validate membership and tangency, project onto tangent spaces, and
evaluate exponential/log maps, so process simulation never leaves the
manifold by more than the membership tolerance.

The inner product on matrix space used for SO(n) is <X, Y> = (1/2) tr(Y^T X).
This differs from the 1/sqrt(2)-scaled trace form sometimes quoted for
so(2): under the convention here the canonical basis matrices of so(n)
(see liegroup.so_basis) have norm exactly 1, which is what makes "unit
variance per tangent direction" well defined for sampling and estimation.
"""

import numpy as np

from .errors import DomainError, InputError, UnsupportedOperationError
from .matrixops import matrix_exp, matrix_log_so, skew_part

# Membership tolerance: |norm(p) - 1| for spheres, ||p^T p - I||_max for SO(n).
EPS_MEM = 1e-9

# Products of rotations are re-projected onto SO(n) after this many steps.
REPROJECT_EVERY = 64


class Manifold:
    """Base class: an embedded manifold with an exponential map."""

    kind = "abstract"

    # subclasses set: dim (manifold dimension), ambient_shape (tuple)

    @property
    def ambient_size(self):
        return int(np.prod(self.ambient_shape))

    def check_point(self, p):
        """Validate shape and membership; returns p as a float array."""
        p = np.asarray(p, dtype=float)
        if p.shape != self.ambient_shape:
            raise InputError(
                f"point shape {p.shape} does not match {self} ambient shape "
                f"{self.ambient_shape}")
        err = self.membership_error(p)
        if err > EPS_MEM:
            raise InputError(f"point is off {self} by {err:.3e}")
        return p

    def check_tangent(self, p, v, tol=EPS_MEM):
        """Validate that v is tangent at p; returns v as a float array."""
        v = np.asarray(v, dtype=float)
        if v.shape != self.ambient_shape:
            raise InputError(
                f"tangent shape {v.shape} does not match {self} ambient "
                f"shape {self.ambient_shape}")
        err = self.tangency_error(p, v)
        if err > tol * max(1.0, float(np.linalg.norm(v.ravel()))):
            raise InputError(f"vector is not tangent at p (error {err:.3e})")
        return v

    def geodesic(self, p, v, t):
        """Point reached at time t along the geodesic from p with velocity v."""
        return self.exp(p, np.asarray(v, dtype=float) * float(t))

    def parallel_transport(self, p, v, w):
        raise UnsupportedOperationError(
            f"parallel transport is not provided on {self}")

    def __repr__(self):
        return f"{self.kind}:{self.n}"

    def __eq__(self, other):
        return isinstance(other, Manifold) and self.kind == other.kind \
            and self.n == other.n

    def __hash__(self):
        return hash((self.kind, self.n))


class Euclidean(Manifold):
    """R^n with the identity exponential map."""

    kind = "euclidean"

    def __init__(self, n):
        if n < 1:
            raise InputError("Euclidean dimension must be >= 1")
        self.n = int(n)
        self.dim = self.n
        self.ambient_shape = (self.n,)

    def membership_error(self, p):
        return 0.0

    def tangency_error(self, p, v):
        return 0.0

    def project_tangent(self, p, v):
        v = np.asarray(v, dtype=float)
        if v.shape != self.ambient_shape:
            raise InputError(f"vector shape {v.shape} != {self.ambient_shape}")
        return v.copy()

    def exp(self, p, v):
        p = self.check_point(p)
        v = self.check_tangent(p, v)
        return p + v

    def log(self, p, q):
        return self.check_point(q) - self.check_point(p)


class Sphere(Manifold):
    """Unit sphere S^{n-1} embedded in R^n (ambient dimension n)."""

    kind = "sphere"

    def __init__(self, n):
        if n < 2:
            raise InputError("sphere ambient dimension must be >= 2")
        self.n = int(n)
        self.dim = self.n - 1
        self.ambient_shape = (self.n,)

    def membership_error(self, p):
        return abs(float(np.linalg.norm(p)) - 1.0)

    def tangency_error(self, p, v):
        return abs(float(np.dot(p, v)))

    def project_tangent(self, p, v):
        p = self.check_point(p)
        v = np.asarray(v, dtype=float)
        if v.shape != self.ambient_shape:
            raise InputError(f"vector shape {v.shape} != {self.ambient_shape}")
        return v - np.dot(v, p) * p

    def exp(self, p, v):
        p = self.check_point(p)
        v = self.check_tangent(p, v)
        theta = float(np.linalg.norm(v))
        if theta == 0.0:
            return p.copy()
        q = np.cos(theta) * p + np.sin(theta) * (v / theta)
        # renormalize: keeps long simulations on the sphere
        return q / np.linalg.norm(q)

    def log(self, p, q):
        p = self.check_point(p)
        q = self.check_point(q)
        c = float(np.clip(np.dot(p, q), -1.0, 1.0))
        if c <= -1.0 + 1e-12:
            raise DomainError("antipodal points: log map undefined at the "
                              "cut locus")
        u = q - c * p
        nu = float(np.linalg.norm(u))
        if nu < 1e-15:
            return np.zeros_like(p)
        return np.arccos(c) * (u / nu)

    def parallel_transport(self, p, v, w):
        """Transport w along the geodesic t -> exp(p, t v) to t = 1.

        The component of w along v rotates with the geodesic; the orthogonal
        component is unchanged.  Preserves norms and inner products.
        """
        p = self.check_point(p)
        v = self.check_tangent(p, v)
        w = self.check_tangent(p, w)
        theta = float(np.linalg.norm(v))
        if theta == 0.0:
            return w.copy()
        u = v / theta
        a = float(np.dot(w, u))
        w_perp = w - a * u
        return a * (np.cos(theta) * u - np.sin(theta) * p) + w_perp


class SpecialOrthogonal(Manifold):
    """Rotation group SO(n) embedded in n x n matrix space."""

    kind = "so"

    def __init__(self, n):
        if n < 2:
            raise InputError("SO(n) requires n >= 2")
        self.n = int(n)
        self.dim = self.n * (self.n - 1) // 2
        self.ambient_shape = (self.n, self.n)

    def membership_error(self, p):
        err = float(np.abs(p.T @ p - np.eye(self.n)).max())
        if np.linalg.det(p) < 0:
            return np.inf
        return err

    def tangency_error(self, p, v):
        # tangent space at p is p * so(n): p^T v must be skew
        a = p.T @ v
        return float(np.abs(a + a.T).max()) / 2.0

    def project_tangent(self, p, v):
        p = self.check_point(p)
        v = np.asarray(v, dtype=float)
        if v.shape != self.ambient_shape:
            raise InputError(f"vector shape {v.shape} != {self.ambient_shape}")
        return p @ skew_part(p.T @ v)

    def exp(self, p, v):
        p = self.check_point(p)
        v = self.check_tangent(p, v)
        return p @ matrix_exp(skew_part(p.T @ v))

    def log(self, p, q):
        p = self.check_point(p)
        q = self.check_point(q)
        return p @ matrix_log_so(p.T @ q)

    def identity(self):
        return np.eye(self.n)


def parse_manifold(text):
    """Parse 'euclidean:2', 'sphere:3' or 'so:3' into a manifold instance."""
    try:
        kind, _, order = text.partition(":")
        n = int(order)
    except (ValueError, AttributeError):
        raise InputError(f"cannot parse manifold spec {text!r}") from None
    kinds = {"euclidean": Euclidean, "sphere": Sphere, "so": SpecialOrthogonal}
    if kind not in kinds:
        raise InputError(f"unknown manifold kind {kind!r} "
                         f"(expected one of {sorted(kinds)})")
    return kinds[kind](n)
