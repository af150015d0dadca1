"""Deterministic random substreams derived from a root seed and tag path.

Every random decision in a run is drawn from a stream keyed by
``(root_seed, *tags)``. The subseed derivation hashes the key, so streams for
different purposes (society init, per-round puzzles, ...) are independent and
bit-reproducible across platforms and processes.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, *tags: int | str) -> int:
    """A 64-bit subseed for the stream identified by ``root`` and ``tags``."""
    digest = hashlib.sha256()
    digest.update(str(int(root)).encode("ascii"))
    for tag in tags:
        digest.update(b"/")
        digest.update(str(tag).encode("utf-8"))
    return int.from_bytes(digest.digest()[:8], "big")


def substream(root: int, *tags: int | str) -> random.Random:
    """An independent ``random.Random`` seeded from ``derive_seed(root, *tags)``."""
    return random.Random(derive_seed(root, *tags))
