"""Reverse-filtration verification for the +/-2 chain at the pure-coupling step.

Refine the eta-point circle dyadically: level i (i = 0..kappa) splits each
site into 2^(kappa-i) cells, one per sign path of length kappa-i.  The
indexing bijection interleaves base point and path,

    cell(j, omega) = 2^L j + sum_k bit(omega_k) 2^(L-k),   L = kappa - i,

with bit(+1) = 1 as the most significant path bit (k = 1).  Storing the
time-i field evaluated at the walk endpoint j + 2*sum(omega) in that
cell makes halving-block averages *exactly* one chain step: averaging
over the last sign is (F_i(x-2) + F_i(x+2))/2 = F_{i+1}(x).  IEEE
rounding commutes with the final halving, so the stored level i+1 is
reproduced bit for bit — the reverse-martingale identity holds exactly,
not just to tolerance, and martingale_check verifies every level pair.

Everything here works on raw value vectors rather than GridFunction:
the construction is index combinatorics, and eta = 3 (below the
geometric grid minimum) is a legitimate chain size.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .markov import LengthMismatch
from .walk import KappaTooLarge, popcount64

_KAPPA_CAP = 16  # level-0 storage is 2^kappa * eta doubles


class RangeError(ValueError):
    """Base point, sign entry, or level outside its admissible range."""


class LevelRange(ValueError):
    """Conditional expectation needs a source level strictly below kappa."""


@dataclass(frozen=True)
class PathIndexer:
    """The bijection (base point j, sign path omega) -> cell index at one level."""

    eta: int
    kappa: int
    level: int

    def __post_init__(self):
        if self.eta < 3:
            raise ValueError(f"eta must be >= 3, got {self.eta}")
        if not 0 <= self.level <= self.kappa:
            raise RangeError(f"level {self.level} outside 0..{self.kappa}")

    @property
    def path_len(self) -> int:
        return self.kappa - self.level

    @property
    def n_cells(self) -> int:
        return (1 << self.path_len) * self.eta


def phi_index(p: PathIndexer, j: int, omega) -> int:
    """Cell index 2^L j + sum_k bit(omega_k) 2^(L-k); omega_1 is the MSB."""
    length = p.path_len
    omega = np.asarray(omega, dtype=np.int64)
    if omega.shape != (length,):
        raise LengthMismatch(f"omega must have length {length}, got shape {omega.shape}")
    if length and not np.all(np.abs(omega) == 1):
        raise RangeError(f"omega entries must be +-1, got {omega.tolist()}")
    if not 0 <= j < p.eta:
        raise RangeError(f"base point {j} outside 0..{p.eta - 1}")
    bits = (omega + 1) // 2
    s = 0
    for b in bits:
        s = (s << 1) | int(b)
    return (j << length) | s


@dataclass(frozen=True)
class DyadicField:
    """One value vector per level; level i has 2^(kappa-i) * eta cells."""

    eta: int
    kappa: int
    levels: tuple

    def __post_init__(self):
        if len(self.levels) != self.kappa + 1:
            raise LengthMismatch(
                f"need {self.kappa + 1} levels, got {len(self.levels)}"
            )
        for i, lv in enumerate(self.levels):
            want = (1 << (self.kappa - i)) * self.eta
            if lv.shape != (want,):
                raise LengthMismatch(
                    f"level {i} must have {want} cells, got shape {lv.shape}"
                )


def chain_step_vector(values: np.ndarray) -> np.ndarray:
    """One +/-2 chain step on a raw vector: (v(i-2) + v(i+2))/2."""
    return 0.5 * np.roll(values, 2) + 0.5 * np.roll(values, -2)


def evolve_snapshots(init_values, kappa: int) -> np.ndarray:
    """Stack the chain orbit: row i is the field after i steps, i = 0..kappa."""
    v = np.asarray(init_values, dtype=float)
    if v.ndim != 1 or len(v) < 3:
        raise ValueError(f"need a 1-d vector of >= 3 values, got shape {v.shape}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    rows = [v.copy()]
    for _ in range(kappa):
        rows.append(chain_step_vector(rows[-1]))
    return np.stack(rows)


def build_reverse_field(f_path: np.ndarray, kappa: int) -> DyadicField:
    """Fill every level: cell (j, omega) at level i holds F_i[(j + 2 sum omega) mod eta].

    `f_path` is the (kappa+1, eta) chain orbit from evolve_snapshots; the
    sign paths at level i are the kappa-i steps *not yet averaged out*,
    enumerated through the popcount of the path bits (sum omega =
    2 popcount - L).  Level kappa is F_kappa itself.
    """
    f_path = np.asarray(f_path, dtype=float)
    if kappa > _KAPPA_CAP:
        raise KappaTooLarge(f"kappa = {kappa} exceeds the cap {_KAPPA_CAP}")
    if f_path.ndim != 2 or f_path.shape[0] != kappa + 1:
        raise LengthMismatch(
            f"f_path must have shape (kappa+1, eta), got {f_path.shape}"
        )
    eta = f_path.shape[1]
    levels = []
    for i in range(kappa + 1):
        length = kappa - i
        s = np.arange(1 << length, dtype=np.uint64)
        sums = 2 * popcount64(s) - length
        idx = (np.add.outer(np.arange(eta, dtype=np.int64), 2 * sums) % eta).ravel()
        levels.append(f_path[i][idx])
    return DyadicField(eta, kappa, tuple(levels))


def conditional_expectation(d: DyadicField, from_level: int) -> np.ndarray:
    """Average out the last sign: output[r] = (level[2r] + level[2r+1])/2."""
    if not 0 <= from_level < d.kappa:
        raise LevelRange(f"from_level {from_level} outside 0..{d.kappa - 1}")
    lv = d.levels[from_level]
    return 0.5 * (lv[0::2] + lv[1::2])


@dataclass(frozen=True)
class MartingaleReport:
    """Per-pair deviations of iterated conditioning against stored levels."""

    eta: int
    kappa: int
    pairs: tuple            # (from_level, to_level, max_abs_deviation)
    worst_from: int
    worst_to: int
    worst_cell: int
    max_deviation: float
    scale: float

    @property
    def ok(self) -> bool:
        return self.max_deviation <= 1e-12 * self.scale


def martingale_check(d: DyadicField) -> MartingaleReport:
    """Verify E(level j | level i algebra) == stored level i for all j <= i.

    Conditioning is iterated one level at a time (tower law); the report
    localizes the worst pair and cell so a corrupted entry is traceable.
    """
    scale = float(np.max(np.abs(d.levels[0]))) if len(d.levels[0]) else 0.0
    pairs = []
    worst = (-1.0, 0, 0, 0)
    for j in range(d.kappa + 1):
        v = d.levels[j]
        pairs.append((j, j, 0.0))  # conditioning on the level's own algebra
        for i in range(j + 1, d.kappa + 1):
            v = 0.5 * (v[0::2] + v[1::2])
            dev = np.abs(v - d.levels[i])
            cell = int(np.argmax(dev))
            top = float(dev[cell])
            pairs.append((j, i, top))
            if top > worst[0]:
                worst = (top, j, i, cell)
    max_dev = max((p[2] for p in pairs), default=0.0)
    return MartingaleReport(
        eta=d.eta,
        kappa=d.kappa,
        pairs=tuple(pairs),
        worst_from=worst[1],
        worst_to=worst[2],
        worst_cell=worst[3],
        max_deviation=max_dev,
        scale=scale,
    )


def feynman_kac_readout(d: DyadicField) -> np.ndarray:
    """Average level 0 over each base point's path block.

    Iterated pairwise halving reproduces the conditional-expectation
    arithmetic exactly, so the result equals level kappa bit for bit:
    F_kappa(j) = 2^-kappa sum_omega F_0(j + 2 sum omega).
    """
    v = d.levels[0]
    for _ in range(d.kappa):
        v = 0.5 * (v[0::2] + v[1::2])
    return v
