"""Hierarchical counter-based random streams.

Every stochastic routine takes an explicit ``numpy.random.Generator``.  Streams
are derived from a root seed plus a path of labels, so the same (seed, path)
always yields the same stream no matter in which order tasks run.  Philox is
counter-based, which keeps independent substreams cheap and collision-free.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["stream", "substream_key", "uniform_int"]


def substream_key(seed: int, *path: object) -> tuple[int, int]:
    """Hash a seed and label path into two 64-bit words (a Philox key)."""
    text = repr(int(seed)) + "/" + "/".join(repr(p) for p in path)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return (
        int.from_bytes(digest[:8], "little"),
        int.from_bytes(digest[8:16], "little"),
    )


def stream(seed: int, *path: object) -> np.random.Generator:
    """Return the generator for substream ``path`` of root ``seed``.

    ``stream(7, "shadows", state_id, shot_block)`` is reproducible and
    independent of every other path, so parallel workers cannot reorder
    randomness.
    """
    return np.random.Generator(np.random.Philox(key=substream_key(seed, *path)))


def uniform_int(rng: np.random.Generator, upper: int) -> int:
    """Uniform integer in ``[0, upper)`` for arbitrarily large ``upper``.

    ``Generator.integers`` is limited to 64-bit bounds; Clifford-group orders
    for k >= 5 exceed that.  Uses rejection sampling on raw bits, so the
    result is exactly uniform.
    """
    if upper <= 0:
        raise ValueError("upper must be positive")
    if upper <= (1 << 63):
        return int(rng.integers(upper))
    nbits = upper.bit_length()
    nbytes = (nbits + 7) // 8
    excess = 8 * nbytes - nbits
    while True:
        value = int.from_bytes(rng.bytes(nbytes), "little") >> excess
        if value < upper:
            return value
