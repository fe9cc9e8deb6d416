"""
seed_utils.py

This module derives independent, reproducible random generators from a single run seed,
so that initialization, shuffling, dropout and data generation never share a stream.

Example:
    >>> init_rng = derive_rng(13, "init")
    >>> shuffle_rng = derive_rng(13, "shuffle")

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import zlib

import numpy as np


def stream_key(name: str) -> int:
    """Stable 32-bit key for a stream name (independent of PYTHONHASHSEED)."""
    return zlib.crc32(name.encode("utf-8"))


def derive_rng(seed: int, *streams: str) -> np.random.Generator:
    """
    Build a generator for a named stream of a seeded run.

    Args:
        seed (int): Run seed.
        *streams (str): Stream path, e.g. ("train", "dropout").

    Returns:
        np.random.Generator: PCG64 generator; equal arguments give equal sequences.
    """
    entropy = [int(seed)] + [stream_key(name) for name in streams]
    return np.random.default_rng(np.random.SeedSequence(entropy))
