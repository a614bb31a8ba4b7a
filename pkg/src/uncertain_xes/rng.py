"""Named, reproducible random substreams (numpy PCG64 seeded via SeedSequence)."""
from __future__ import annotations

import hashlib

import numpy as np


def _words(name: str) -> list[int]:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return [int.from_bytes(digest[i:i + 4], "little") for i in range(0, 32, 4)]


def substream(seed: int, *names: str) -> np.random.Generator:
    """Generator determined only by ``seed`` and the ``names`` path.

    ``substream(42, "ID192", "sample")`` is the same stream whatever else the
    program has drawn, so per-trace results do not depend on log order.
    """
    seed = int(seed) % (1 << 64)
    entropy = [seed & 0xFFFFFFFF, seed >> 32]
    for name in names:
        entropy.extend(_words(str(name)))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
