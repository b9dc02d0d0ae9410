"""Euclidean SDE solvers: Euler-Maruyama for Ito equations, a Heun
predictor-corrector for scalar Stratonovich equations, and the
Stratonovich-to-Ito drift correction.

Ensemble variants are vectorized across paths but draw-matched to the
per-path solvers: path i always consumes the draws of stream
(master_seed, i) in the same order, so both code paths produce the same
numbers for the same configuration.
"""

import dataclasses
import typing

import numpy as np

from .errors import InputError, SimulationDivergedError
from .manifolds import Euclidean
from .paths import Path
from .randomness import GaussianStream


@dataclasses.dataclass
class DiffusionSpec:
    """Ito equation dX = b(t, X) dt + Sigma(t, X) dB with declared dimensions."""

    drift: typing.Callable
    diffusion: typing.Callable
    state_dim: int = 1
    driver_dim: int = 1

    def drift_at(self, t, x):
        b = np.asarray(self.drift(t, x), dtype=float).reshape(-1)
        if b.shape != (self.state_dim,):
            raise InputError(
                f"drift returned shape {b.shape}, expected ({self.state_dim},)")
        return b

    def diffusion_at(self, t, x):
        s = np.asarray(self.diffusion(t, x), dtype=float)
        s = s.reshape(self.state_dim, -1) if s.ndim <= 2 else s
        if s.shape != (self.state_dim, self.driver_dim):
            raise InputError(
                f"diffusion returned shape {s.shape}, expected "
                f"({self.state_dim}, {self.driver_dim})")
        return s


def euler_maruyama(spec, x0, cfg, stream):
    """Forward-Euler scheme X_{k+1} = X_k + b dt + Sigma sqrt(dt) z_k.

    Raises SimulationDivergedError (carrying the step index) if the state
    overflows to a non-finite value.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    if x.shape != (spec.state_dim,):
        raise InputError(f"x0 shape {x.shape} != ({spec.state_dim},)")
    dt = cfg.dt
    sq = np.sqrt(dt)
    out = np.empty((cfg.n_steps + 1, spec.state_dim))
    out[0] = x
    t = 0.0
    for k in range(cfg.n_steps):
        z = np.atleast_1d(stream.normal(spec.driver_dim))
        x = x + spec.drift_at(t, x) * dt + spec.diffusion_at(t, x) @ (sq * z)
        if not np.all(np.isfinite(x)):
            raise SimulationDivergedError(k)
        out[k + 1] = x
        t += dt
    return Path(Euclidean(spec.state_dim), cfg.times(), out)


def strat_to_ito(sigma, dsigma_dx):
    """Ito form of the scalar Stratonovich equation dX = sigma(t, X) o dB:
    drift (1/2) sigma dsigma/dx, diffusion sigma."""
    return DiffusionSpec(
        drift=lambda t, x: 0.5 * np.asarray(sigma(t, x))
        * np.asarray(dsigma_dx(t, x)),
        diffusion=sigma,
        state_dim=1,
        driver_dim=1,
    )


def heun_stratonovich(sigma, x0, cfg, stream):
    """Predictor-corrector scheme for scalar dX = sigma(t, X) o dB:
    predict with the left endpoint, correct with the average of the
    diffusion at both endpoints.  Converges to the Stratonovich solution.
    """
    x = float(np.asarray(x0, dtype=float).reshape(()))
    dt = cfg.dt
    sq = np.sqrt(dt)
    out = np.empty((cfg.n_steps + 1, 1))
    out[0, 0] = x
    t = 0.0
    for k in range(cfg.n_steps):
        db = sq * float(stream.normal())
        s0 = float(np.asarray(sigma(t, x)).reshape(()))
        pred = x + s0 * db
        s1 = float(np.asarray(sigma(t + dt, pred)).reshape(()))
        x = x + 0.5 * (s0 + s1) * db
        if not np.isfinite(x):
            raise SimulationDivergedError(k)
        out[k + 1, 0] = x
        t += dt
    return Path(Euclidean(1), cfg.times(), out)


def _ensemble_draws(cfg, n_paths, master_seed, stream_offset=0):
    # path i consumes stream (master_seed, offset+i) one variate per step,
    # matching the scalar per-path solvers
    cols = [GaussianStream(master_seed, stream_offset + i).normal(cfg.n_steps)
            for i in range(n_paths)]
    return np.stack(cols, axis=1)  # (n_steps, n_paths)


def euler_maruyama_endpoints(spec, x0, cfg, n_paths, master_seed,
                             stream_offset=0, return_driver=False):
    """Endpoints X(T) of n_paths scalar Euler-Maruyama runs, vectorized.

    Only scalar state and driver are supported; drift/diffusion callables
    must broadcast over a vector of states.
    """
    if spec.state_dim != 1 or spec.driver_dim != 1:
        raise InputError("ensemble runner supports scalar equations only")
    z = _ensemble_draws(cfg, n_paths, master_seed, stream_offset)
    dt, sq = cfg.dt, np.sqrt(cfg.dt)
    x = np.full(n_paths, float(np.asarray(x0).reshape(())))
    t = 0.0
    for k in range(cfg.n_steps):
        x = x + np.asarray(spec.drift(t, x)) * dt \
            + np.asarray(spec.diffusion(t, x)) * (sq * z[k])
        t += dt
    if not np.all(np.isfinite(x)):
        raise SimulationDivergedError(int(np.argmax(~np.isfinite(x))))
    if return_driver:
        return x, sq * z.sum(axis=0)
    return x


def heun_endpoints(sigma, x0, cfg, n_paths, master_seed, stream_offset=0):
    """Endpoints X(T) of n_paths scalar Heun runs, vectorized and
    draw-matched to heun_stratonovich."""
    z = _ensemble_draws(cfg, n_paths, master_seed, stream_offset)
    dt, sq = cfg.dt, np.sqrt(cfg.dt)
    x = np.full(n_paths, float(np.asarray(x0).reshape(())))
    t = 0.0
    for k in range(cfg.n_steps):
        db = sq * z[k]
        s0 = np.asarray(sigma(t, x))
        s1 = np.asarray(sigma(t + dt, x + s0 * db))
        x = x + 0.5 * (s0 + s1) * db
        t += dt
    if not np.all(np.isfinite(x)):
        raise SimulationDivergedError(int(np.argmax(~np.isfinite(x))))
    return x
