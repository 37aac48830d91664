"""Named, reproducible RNG substreams.

All randomness in a tournament flows from the single config seed. Each
decision point (group split, seat order, a tie-break within one group...)
gets its own stream named by a label path, so adding or removing one
consumer never shifts the draws seen by another.
"""

from __future__ import annotations

import hashlib
import random


def substream(seed: int, *labels: object) -> random.Random:
    """Derive an independent `random.Random` for (seed, labels).

    The mapping is stable across runs and platforms: the label path is
    hashed with SHA-256 and the first 8 bytes seed a Mersenne Twister.
    """
    key = f"{seed}|" + "/".join(str(part) for part in labels)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
