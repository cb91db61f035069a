"""Deterministic RNG derivation.

All randomness in the package flows from one user-supplied root seed.
Sub-streams are derived by hashing the root seed together with a scope
path (component name, trial index, ...), so independent components and
parallel trials get decorrelated, reproducible streams regardless of
execution order or worker count.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, *scope: object) -> int:
    """Hash (root, scope...) into a 64-bit stream seed."""
    text = ":".join([str(root), *(str(part) for part in scope)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(root: int, *scope: object) -> random.Random:
    """A fresh random.Random seeded from the derived stream seed."""
    return random.Random(derive_seed(root, *scope))
