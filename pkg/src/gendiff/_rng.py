"""Deterministic, keyed random streams for samplers.

Every noise draw a sampler makes comes from a counter-based Philox stream
keyed by ``(seed, stream tag, step index)``.  Member ``i`` of a batch always
reads row ``i`` of the stream's output matrix, so the noise a member sees is
a pure function of ``(seed, step, member)`` and never depends on how large
the batch is or how it was chunked.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Stream tags. Keeping these disjoint is what lets the selection machinery
# consume randomness without perturbing the noise trajectories.
TAG_INIT = 0
TAG_STEP = 1
TAG_SELECT = 2


def keyed_stream(seed: int, tag: int, step: int = 0) -> np.random.Generator:
    """A fresh generator for the (seed, tag, step) stream."""
    entropy = [int(seed) & _MASK64, int(tag) & _MASK64, int(step) & _MASK64]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def member_normals(seed: int, tag: int, step: int, n: int, dim: int) -> np.ndarray:
    """Standard-normal matrix of shape (n, dim); row i belongs to member i.

    Rows are filled in member order from a single stream, so the first k rows
    are identical for any request with n >= k under the same key.
    """
    return keyed_stream(seed, tag, step).standard_normal((n, dim))


def member_uniforms(seed: int, tag: int, step: int, n: int, k: int) -> np.ndarray:
    """Uniform(0,1) matrix of shape (n, k) with the same row-keying contract."""
    return keyed_stream(seed, tag, step).random((n, k))


def mix_seed(*parts: int) -> int:
    """Collapse a tuple of integers into a single derived seed.

    Used to give sub-tasks (per-episode replans, per-cell sweep runs)
    independent but reproducible randomness.
    """
    entropy = [int(p) & _MASK64 for p in parts]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])
