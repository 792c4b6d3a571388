"""Deterministic splittable random streams.

Every stochastic routine in the package draws from a :class:`RandomStream`,
a (master_seed, stream_index) pair keying a counter-based Philox generator.
The pair fully determines the stream, so samples are reproducible regardless
of thread count or call order, and distinct stream indices give independent
streams.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def stream_index(*labels) -> int:
    """Hash a tuple of labels to a stable 64-bit stream index.

    Uses BLAKE2b over the labels' reprs, so the mapping is identical across
    platforms and interpreter runs (unlike the builtin ``hash``).
    """
    h = hashlib.blake2b(digest_size=8)
    for label in labels:
        h.update(repr(label).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class RandomStream:
    """Immutable descriptor for one independent random stream."""

    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        key = np.array(
            [self.master_seed & _MASK64, self.stream_index & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))


def substream(master_seed: int, *labels) -> RandomStream:
    """Stream addressed by a label tuple, e.g. (kind, k, N, sample, role)."""
    return RandomStream(master_seed, stream_index(*labels))
