"""Deterministic counter-based random numbers.

Every draw is a pure function of a key tuple: ``draw(seed, k0, k1, ...)``
hashes the keys through the splitmix64 finalizer and reads bits off the
result.  There is no sequential state, so any lane of a simulation can be
evaluated at any time, in any order, on any number of shards, and the
result is bit-identical — the reproducibility contract the simulation
code relies on.

Keys are combined left to right with h <- mix64(h + key * GAMMA), GAMMA
the 64-bit golden-ratio constant; array keys broadcast elementwise.
"""
from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MULT1 = np.uint64(0xBF58476D1CE4E5B9)
_MULT2 = np.uint64(0x94D049BB133111EB)


def mix64(x) -> np.ndarray:
    """splitmix64 finalizer, elementwise on uint64 input (mod-2^64 wraparound)."""
    with np.errstate(over="ignore"):
        z = np.asarray(x, dtype=np.uint64) + _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MULT1
        z = (z ^ (z >> np.uint64(27))) * _MULT2
        return z ^ (z >> np.uint64(31))


def counter_hash(seed: int, *keys) -> np.ndarray:
    """Hash (seed, keys...) to uint64; array keys broadcast."""
    h = mix64(np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    for k in keys:
        k = np.asarray(k)
        if k.dtype.kind not in "ui":
            raise TypeError(f"counter keys must be integers, got dtype {k.dtype}")
        with np.errstate(over="ignore"):
            h = mix64(h + k.astype(np.uint64) * _GAMMA)
    return h


def uniform01(seed: int, *keys) -> np.ndarray:
    """U[0,1) with 53-bit mantissas, one per key lane."""
    return (counter_hash(seed, *keys) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def signs(seed: int, *keys) -> np.ndarray:
    """+/-1 draws from the top hash bit, one per key lane."""
    bit = (counter_hash(seed, *keys) >> np.uint64(63)).astype(np.int64)
    return 2 * bit - 1
