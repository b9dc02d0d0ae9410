"""Dense matrix kernels: exponential, principal logarithms, polar and QR
factors with a determinant-+1 convention.

Everything here operates on small square matrices (rotation-group sizes).
The exponential uses closed forms for n <= 2, the axis-angle formula for
skew 3x3 input, and scaling-and-squaring (scipy) otherwise.
"""

import numpy as np
import scipy.linalg

from .errors import DegenerateInputError, DomainError, InputError

# Tolerance for structural checks (orthogonality, symmetry, skewness).
STRUCT_TOL = 1e-9


def _as_square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"{name} must be square, got shape {a.shape}")
    return a


def skew_part(a):
    """Skew-symmetric part (a - a^T)/2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a - a.T)


def sym_part(a):
    """Symmetric part (a + a^T)/2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)


def is_skew(a, tol=STRUCT_TOL):
    a = np.asarray(a, dtype=float)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return float(np.abs(a + a.T).max(initial=0.0)) <= tol * scale


def _exp_2x2(a):
    # exp of a general 2x2 via trace/determinant closed form:
    # write a = mu*I + b with tr(b) = 0, then b^2 = delta^2 * I.
    mu = 0.5 * (a[0, 0] + a[1, 1])
    b = a - mu * np.eye(2)
    # delta^2 = mu^2 - det(a) = -det(b)
    d2 = -(b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0])
    if d2 > 1e-24:
        d = np.sqrt(d2)
        c, s = np.cosh(d), np.sinh(d) / d
    elif d2 < -1e-24:
        d = np.sqrt(-d2)
        c, s = np.cos(d), np.sin(d) / d
    else:
        c, s = 1.0, 1.0
    return np.exp(mu) * (c * np.eye(2) + s * b)


def _rodrigues(a):
    # exp of a skew 3x3 via the axis-angle formula, with series fallbacks
    # near theta = 0.
    w = np.array([a[2, 1], a[0, 2], a[1, 0]])
    theta2 = float(w @ w)
    theta = np.sqrt(theta2)
    if theta < 1e-4:
        # sin(t)/t and (1-cos t)/t^2 Taylor series, error ~ t^6
        s = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0
        c = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0
    else:
        s = np.sin(theta) / theta
        c = (1.0 - np.cos(theta)) / theta2
    a2 = np.outer(w, w) - theta2 * np.eye(3)
    return np.eye(3) + s * a + c * a2


def matrix_exp(a):
    """Principal matrix exponential of a square matrix.

    Closed form for n <= 2, axis-angle for skew 3x3, otherwise
    scaling-and-squaring with a Pade approximant.  Total function:
    never raises for square input.
    """
    a = _as_square(a)
    n = a.shape[0]
    if n == 1:
        return np.array([[np.exp(a[0, 0])]])
    if n == 2:
        return _exp_2x2(a)
    if n == 3 and is_skew(a, tol=1e-13):
        return _rodrigues(a)
    return scipy.linalg.expm(a)


def _check_rotation(r, tol=STRUCT_TOL):
    r = _as_square(r, "rotation")
    n = r.shape[0]
    if np.abs(r.T @ r - np.eye(n)).max() > tol * 10:
        raise InputError("matrix is not orthogonal within tolerance")
    if np.linalg.det(r) < 0:
        raise InputError("matrix has determinant -1, not a rotation")
    return r


def matrix_log_so(r):
    """Principal logarithm of a rotation matrix (skew-symmetric result).

    Rotation angles must lie in (-pi, pi): an eigenvalue -1 (a half-turn
    plane) has no principal branch and raises DomainError.
    """
    r = _check_rotation(r)
    n = r.shape[0]
    if n == 1:
        return np.zeros((1, 1))
    if n == 2:
        if r[0, 0] <= -1.0 + 1e-12:
            raise DomainError("rotation by pi has no principal logarithm")
        theta = np.arctan2(r[1, 0], r[0, 0])
        return np.array([[0.0, -theta], [theta, 0.0]])
    if n == 3:
        return _log_so3(r)
    # general n: principal log via scipy, then enforce skewness
    eigvals = np.linalg.eigvals(r)
    if np.min(np.abs(eigvals + 1.0)) < 1e-9:
        raise DomainError("rotation has eigenvalue -1; angle pi is outside "
                          "the principal branch")
    a = skew_part(np.real(scipy.linalg.logm(r)))
    if np.abs(matrix_exp(a) - r).max() > 1e-8:
        raise DomainError("principal logarithm did not converge")
    return a


def _log_so3(r):
    cos_theta = np.clip(0.5 * (np.trace(r) - 1.0), -1.0, 1.0)
    theta = np.arccos(cos_theta)
    if theta > np.pi - 1e-8:
        raise DomainError("rotation by pi has no principal logarithm")
    if theta < 1e-6:
        # log(R) ~ skew(R) * (1 + theta^2/6); the correction is < 1e-12 here
        return skew_part(r)
    if theta < 2.9:
        return (theta / (2.0 * np.sin(theta))) * (r - r.T)
    # near pi the skew part is tiny; recover the axis from the symmetric part
    # K^2 = (sym(R) - I) / (1 - cos theta), diag(K^2) = u_i^2 - 1
    m = sym_part(r)
    u2 = np.clip((np.diag(m) - cos_theta) / (1.0 - cos_theta), 0.0, None)
    u = np.sqrt(u2)
    # fix signs using the (small but nonzero for theta < pi) skew part
    w = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    u *= np.where(w < 0, -1.0, 1.0)
    u /= np.linalg.norm(u)
    return theta * np.array([
        [0.0, -u[2], u[1]],
        [u[2], 0.0, -u[0]],
        [-u[1], u[0], 0.0],
    ])


def matrix_log_spd(p):
    """Logarithm of a symmetric positive-definite matrix via eigendecomposition.

    Raises DomainError for asymmetric input or eigenvalues <= 0 (the offending
    eigenvalues are attached to the exception).
    """
    p = _as_square(p, "spd matrix")
    scale = max(1.0, float(np.abs(p).max()))
    if np.abs(p - p.T).max() > 1e-9 * scale:
        raise DomainError("matrix is not symmetric within tolerance")
    w, v = np.linalg.eigh(sym_part(p))
    if np.min(w) <= 0.0:
        err = DomainError(f"matrix is not positive definite; eigenvalues {w}")
        err.eigenvalues = w
        raise err
    return sym_part(v @ np.diag(np.log(w)) @ v.T)


def polar_decompose(y):
    """Polar factors (u, p) of a full-rank square matrix y = u @ p.

    u is always special orthogonal: when the orthogonal polar factor has
    determinant -1, the last left singular vector is flipped, which makes p
    symmetric with one negative eigenvalue.  p is recomputed as sym(u^T y)
    so that u @ p reproduces y to rounding.
    """
    y = _as_square(y)
    v, s, wt = np.linalg.svd(y)
    if s[-1] <= 1e-13 * max(s[0], 1e-300):
        raise DegenerateInputError(
            f"matrix is rank deficient (singular values {s})")
    u = v @ wt
    if np.linalg.det(u) < 0:
        v = v.copy()
        v[:, -1] = -v[:, -1]
        u = v @ wt
    p = sym_part(u.T @ y)
    return u, p


def qr_q(y):
    """Q factor of the QR decomposition with positive diagonal of R, then a
    last-column flip if needed so that det Q = +1."""
    y = _as_square(y)
    q, r = np.linalg.qr(y)
    d = np.diag(r)
    if np.min(np.abs(d)) <= 1e-13 * max(np.abs(d).max(), 1e-300):
        raise DegenerateInputError("matrix is rank deficient in QR")
    q = q * np.where(d < 0, -1.0, 1.0)
    if np.linalg.det(q) < 0:
        q = q.copy()
        q[:, -1] = -q[:, -1]
    return q


def project_rotation(y):
    """Nearest special orthogonal matrix (polar factor).  Used to re-project
    drifting products of rotations back onto SO(n)."""
    u, _ = polar_decompose(y)
    return u
