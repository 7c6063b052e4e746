"""Seeded randomness contract used across the package.

Every stochastic operation takes an explicit 64-bit integer seed and builds
its own PCG64 generator; there is no hidden global RNG state. The mapping
from seed to random stream is fixed:

* ``generator(seed)`` wraps ``PCG64(SeedSequence(seed))``.
* Independent sub-streams are derived with spawn keys,
  ``generator(seed, k)`` = ``PCG64(SeedSequence(seed, spawn_key=(k,)))``,
  so an operation that needs several streams (e.g. case sampling plus
  classifier coin flips) derives them by a fixed index, never by sharing.
* Non-uniform variates are produced by explicit transforms of the raw
  ``random()`` doubles: inverse-CDF for intervals and discrete choices,
  Box-Muller for Gaussians (see :func:`box_muller`). Together with PCG64's
  stable bit stream this makes identical seeds give identical output on
  every platform.
"""

from __future__ import annotations

import numpy as np

__all__ = ["generator", "box_muller"]


def generator(seed: int, *spawn_key: int) -> np.random.Generator:
    """Return the PCG64 generator for ``seed``, optionally a derived sub-stream."""
    ss = np.random.SeedSequence(seed, spawn_key=spawn_key)
    return np.random.Generator(np.random.PCG64(ss))


def box_muller(uniforms: np.ndarray) -> np.ndarray:
    """Map pairs of [0,1) uniforms to standard normal deviates.

    ``uniforms`` has shape (n, 2c); columns are consumed pairwise:
    ``z0 = sqrt(-2 ln(1-u1)) cos(2 pi u2)`` and the matching ``sin`` term.
    Using ``1 - u1`` keeps the log argument in (0, 1]. Output has the same
    shape, normals interleaved in the positions of their source pair.
    """
    u = np.asarray(uniforms, dtype=float)
    if u.ndim != 2 or u.shape[1] % 2 != 0:
        raise ValueError("box_muller expects an (n, 2c) array of uniforms")
    u1 = u[:, 0::2]
    u2 = u[:, 1::2]
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    out = np.empty_like(u)
    out[:, 0::2] = radius * np.cos(angle)
    out[:, 1::2] = radius * np.sin(angle)
    return out
