"""Particle densities of independent +/-2 random walkers on the circle.

Each of `step` coin flips moves a walker two lattice sites left or right;
a nonnegative initial density f spreads as the expected occupation of the
endpoints.  Two routes compute the same density: brute-force enumeration
of all 2^step sign sequences (exact, small step), and the binomial closed
form folded onto the circle (any step).  At the chain coupling 2r = 1
both equal the explicit heat evolution of f.

All folding happens on integer lattice offsets, never on floats, so the
three representations agree to accumulation roundoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .grid import CircleGrid, GridFunction, GridMismatch

_ENUM_CAP = 24  # 2^24 sign sequences; enumeration refuses beyond this
_EXACT_COMB_CAP = 60  # exact-integer comb path below; log-gamma pmf above


class KappaTooLarge(ValueError):
    """Enumeration over 2^kappa sign sequences refuses kappa > 24."""


class NegativeInitial(ValueError):
    """Walker densities need nonnegative real initial values."""


def popcount64(x) -> np.ndarray:
    return np.bitwise_count(np.asarray(x, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class WalkEnsemble:
    grid: CircleGrid
    kappa: int
    init: GridFunction

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.init.grid != self.grid:
            raise GridMismatch("initial density lives on a different grid")
        v = self.init.values
        if np.any(v.imag != 0.0) or np.any(v.real < 0.0):
            raise NegativeInitial("initial density must be real and >= 0")


def _fold_offsets(offsets: np.ndarray, weights: np.ndarray, n: int) -> np.ndarray:
    """Total weight per residue class of integer lattice offsets mod n."""
    return np.bincount(offsets % n, weights=weights, minlength=n)


def _convolve(init: np.ndarray, per_residue: np.ndarray) -> np.ndarray:
    """out[j] = sum_r per_residue[r] * init[(j - r) mod n]."""
    out = np.zeros_like(init)
    for r in np.nonzero(per_residue)[0]:
        out += per_residue[r] * np.roll(init, r)
    return out


def density_enumerate(w: WalkEnsemble, step: int) -> GridFunction:
    """Exact density at time step/nu by visiting all 2^step sign sequences.

    Each sequence is a bitmask; its popcount is the number of +1 flips,
    so the walker lands 2*(2*popcount - step) sites away.  No binomial
    identity is used anywhere — this is the independent oracle for
    density_binomial.
    """
    if w.kappa > _ENUM_CAP:
        raise KappaTooLarge(f"kappa = {w.kappa} exceeds the enumeration cap {_ENUM_CAP}")
    if not 0 <= step <= w.kappa:
        raise ValueError(f"step must lie in 0..kappa = {w.kappa}, got {step}")
    n = w.grid.n_pts
    seqs = np.arange(1 << step, dtype=np.uint64)
    heads = popcount64(seqs)
    offsets = 2 * (2 * heads - step)
    counts = _fold_offsets(offsets, np.ones_like(offsets, dtype=float), n)
    per_residue = counts / float(1 << step)
    return GridFunction(w.grid, _convolve(w.init.values, per_residue))


def binomial_weights(step: int) -> np.ndarray:
    """(C(step, k) / 2^step) for k = 0..step; exact integers up to step 60."""
    if step <= _EXACT_COMB_CAP:
        return np.array([math.comb(step, k) for k in range(step + 1)], dtype=float) / float(
            1 << step
        )
    return stats.binom.pmf(np.arange(step + 1), step, 0.5)


def density_binomial(w: WalkEnsemble, step: int) -> GridFunction:
    """Same density via binomial weights: k heads land at offset 2*(2k - step)."""
    if step < 0:
        raise ValueError(f"step must be >= 0, got {step}")
    n = w.grid.n_pts
    ks = np.arange(step + 1)
    offsets = 2 * (2 * ks - step)
    per_residue = _fold_offsets(offsets, binomial_weights(step), n)
    return GridFunction(w.grid, _convolve(w.init.values, per_residue))
