"""Named random streams derived from one master seed."""

import hashlib
import random


def stream_seed(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{int(seed)}/{name}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def stream(seed: int, name: str) -> random.Random:
    """Independent ``random.Random`` for one consumer (generator, sampler, annealer, ...)."""
    return random.Random(stream_seed(seed, name))
