"""Conditionally convergent series experiments.

The alternating harmonic series converges to ln 2 in its natural order,
can be greedily rearranged to approach any chosen target, and -- once the
signs are made random instead of deterministic -- becomes immune to
rearrangement: partial sums under different fixed permutations of the
same random sign sequence converge to the same limit almost surely.
"""

import dataclasses

import numpy as np

from .errors import InputError
from .randomness import GaussianStream

_CHUNK = 1 << 16


def alternating_harmonic_trace(n_terms):
    """Partial sums of 1 - 1/2 + 1/3 - ... in natural order."""
    if n_terms < 1:
        raise InputError("need at least one term")
    n = np.arange(1, n_terms + 1, dtype=float)
    terms = np.where(np.arange(n_terms) % 2 == 0, 1.0, -1.0) / n
    return np.cumsum(terms)


def greedy_rearrangement_trace(target, n_terms):
    """Partial sums of the alternating harmonic terms greedily reordered to
    approach ``target``.

    Rule per step: if the partial sum is <= target take the next unused
    positive term 1/(2i-1), otherwise the next unused negative term -1/(2j).
    Runs of equal sign are filled with vectorized cumulative sums.
    """
    if n_terms < 1:
        raise InputError("need at least one term")
    target = float(target)
    out = np.empty(n_terms)
    filled = 0
    s = 0.0
    i = 1  # next positive term is 1/(2i-1)
    j = 1  # next negative term is -1/(2j)
    while filled < n_terms:
        room = n_terms - filled
        if s <= target:
            k = np.arange(i, i + min(_CHUNK, room))
            cs = s + np.cumsum(1.0 / (2.0 * k - 1.0))
            # stop with the first partial sum that exceeds the target
            stop = int(np.searchsorted(cs > target, True)) + 1
            take = min(stop, len(cs))
            i += take
        else:
            k = np.arange(j, j + min(_CHUNK, room))
            cs = s - np.cumsum(1.0 / (2.0 * k))
            stop = int(np.searchsorted(cs <= target, True)) + 1
            take = min(stop, len(cs))
            j += take
        out[filled:filled + take] = cs[:take]
        s = float(cs[take - 1])
        filled += take
    return out


def block_interleave_permutation(n_terms, block):
    """First n_terms values of the permutation of N that swaps adjacent
    blocks of the given size: L+1..2L, 1..L, 3L+1..4L, 2L+1..3L, ...
    Returned 1-based."""
    if block < 1:
        raise InputError("block size must be >= 1")
    n_blocks = -(-n_terms // (2 * block)) * 2 + 2
    idx = np.arange(n_blocks * block).reshape(-1, 2, block)
    idx = idx[:, ::-1, :].reshape(-1)
    return idx[:n_terms] + 1


@dataclasses.dataclass
class RandomSignTraces:
    """Partial sums of the same random +-1/n sequence in two orders."""

    natural: np.ndarray
    permuted: np.ndarray
    permutation_block: int


def random_sign_traces(n_terms, seed=0, stream_id=0, block=10001):
    """Draw one random sign sequence s_n in {-1, +1} and return the partial
    sums of sum s_n / n in natural order and under a block-interleave
    permutation of the indices.  Both traces approach the same limit."""
    if n_terms < 1:
        raise InputError("need at least one term")
    perm = block_interleave_permutation(n_terms, block)
    n_draws = max(n_terms, int(perm.max()))
    stream = GaussianStream(seed, stream_id)
    signs = np.where(stream.normal(n_draws) < 0, -1.0, 1.0)
    harmonic = signs / np.arange(1, n_draws + 1, dtype=float)
    natural = np.cumsum(harmonic[:n_terms])
    permuted = np.cumsum(harmonic[perm - 1])
    return RandomSignTraces(natural, permuted, block)


def rearrangement_experiment(mode, n_terms, *, target=None, seed=0,
                             block=10001):
    """Dispatch for the series experiments.

    mode 'natural': partial sums of the alternating harmonic series.
    mode 'target': greedy rearrangement toward ``target``.
    mode 'random-signs': RandomSignTraces under two permutations.
    """
    if mode == "natural":
        return alternating_harmonic_trace(n_terms)
    if mode == "target":
        if target is None:
            raise InputError("mode 'target' requires a target value")
        return greedy_rearrangement_trace(target, n_terms)
    if mode == "random-signs":
        return random_sign_traces(n_terms, seed=seed, block=block)
    raise InputError(f"unknown mode {mode!r}")
