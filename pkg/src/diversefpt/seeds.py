"""Deterministic sub-seed derivation.

A child seed is the first 8 bytes of ``blake2b(root || label_1 || ...)``, so a
trial's randomness depends only on the root seed and the trial's labels, not
on the order in which trials happen to run.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(root: int, *labels: object) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(int(root & MASK64).to_bytes(8, "little"))
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode())
    return int.from_bytes(h.digest(), "little")


def child_rng(root: int, *labels: object) -> np.random.Generator:
    return np.random.default_rng(derive_seed(root, *labels))
