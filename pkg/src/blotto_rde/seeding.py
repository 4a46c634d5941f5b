"""Deterministic seed derivation without global RNG state."""

from __future__ import annotations

import hashlib

import numpy as np

SEED_BITS = 64


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed!r}")
    return int(seed)


def derive_seed(seed: int, name: str, index: int = 0) -> int:
    """64-bit seed for stream ``(seed, name, index)``; stable across processes."""
    digest = hashlib.blake2b(f"{check_seed(seed)}:{name}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def rng_for(seed: int, name: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, name, index))
