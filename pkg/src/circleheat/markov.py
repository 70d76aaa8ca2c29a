"""The cyclic +/-2 random-walk chain: exact evolution and mixing bounds.

A state j moves to j-2 or j+2 (mod N), each with probability 1/2 and no
holding.  For odd N the chain is irreducible and aperiodic with the
uniform invariant distribution, and max_ij |p_ij^(n) - 1/N| is bounded
by the explicit envelope eps_n = ((4^N - 1)/4^N)^(n/(2N) - 1).  For even
N the chain preserves index parity and never mixes; the operations that
depend on mixing refuse even N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import signs, uniform01


class EvenStateCount(ValueError):
    """This operation needs an odd number of states (parity obstruction)."""


class LengthMismatch(ValueError):
    """Distribution length does not match the chain's state count."""


@dataclass(frozen=True)
class ChainSpec:
    num_states: int

    def __post_init__(self):
        if self.num_states < 3:
            raise ValueError(f"need at least 3 states, got {self.num_states}")


@dataclass
class Distribution:
    """A weight vector over states: a probability vector or a signed measure.

    Signed measures expose the positive/negative mass split (k_plus,
    k_minus); their total mass k_plus - k_minus is preserved by step().
    """

    weights: np.ndarray
    kind: str = "probability"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1:
            raise ValueError(f"weights must be a 1-d vector, got shape {w.shape}")
        if self.kind == "probability":
            if w.min() < -1e-12:
                raise ValueError(f"negative weight {w.min():.3g} in a probability vector")
            total = w.sum()
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"probability weights sum to {total!r}, not 1")
        elif self.kind != "signed":
            raise ValueError(f"kind must be 'probability' or 'signed', got {self.kind!r}")
        self.weights = w

    @property
    def k_plus(self) -> float:
        return float(self.weights[self.weights > 0].sum())

    @property
    def k_minus(self) -> float:
        return float(-self.weights[self.weights < 0].sum())

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


def delta(num_states: int, state: int) -> Distribution:
    w = np.zeros(num_states)
    w[state % num_states] = 1.0
    return Distribution(w)


def uniform(num_states: int) -> Distribution:
    return Distribution(np.full(num_states, 1.0 / num_states))


def step(chain: ChainSpec, d: Distribution) -> Distribution:
    """One transition: lambda'_j = (lambda_{j-2} + lambda_{j+2}) / 2 (mod N)."""
    if len(d.weights) != chain.num_states:
        raise LengthMismatch(
            f"distribution has {len(d.weights)} entries, chain has {chain.num_states} states"
        )
    w = d.weights
    return Distribution(0.5 * np.roll(w, 2) + 0.5 * np.roll(w, -2), d.kind)


def one_step_matrix(chain: ChainSpec) -> np.ndarray:
    N = chain.num_states
    P = np.zeros((N, N))
    idx = np.arange(N)
    np.add.at(P, (idx, (idx + 2) % N), 0.5)
    np.add.at(P, (idx, (idx - 2) % N), 0.5)
    return P


def n_step_matrix(chain: ChainSpec, n: int) -> np.ndarray:
    """P^n by repeated squaring; P^0 is the identity."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    result = np.eye(chain.num_states)
    base = one_step_matrix(chain)
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def epsilon_bound(num_states: int, n: int) -> float:
    """The mixing envelope ((4^N - 1)/4^N)^(n/(2N) - 1), odd N only.

    Evaluated in log space: log((4^N-1)/4^N) = log1p(-4^-N), so the
    4^N factor never materializes and N in the thousands is fine.
    """
    if num_states % 2 == 0:
        raise EvenStateCount(f"epsilon bound needs odd N, got {num_states}")
    if num_states < 3:
        raise ValueError(f"need N >= 3, got {num_states}")
    log_base = math.log1p(-math.exp(-num_states * math.log(4.0)))
    return math.exp((n / (2.0 * num_states) - 1.0) * log_base)


def tv_distance_to_uniform(chain: ChainSpec, d: Distribution) -> float:
    """Total variation distance (1/2) sum_j |d_j - 1/N|."""
    if d.kind != "probability":
        raise ValueError("total variation distance is defined for probability vectors")
    if len(d.weights) != chain.num_states:
        raise LengthMismatch(
            f"distribution has {len(d.weights)} entries, chain has {chain.num_states} states"
        )
    return float(0.5 * np.abs(d.weights - 1.0 / chain.num_states).sum())


def coupling_simulate(
    chain: ChainSpec,
    init: tuple,
    n_max: int,
    trials: int,
    seed: int,
) -> np.ndarray:
    """Empirical survival curve P(T > n) of the coupling time, n = 0..n_max.

    One copy X starts at the given state, the other Y is drawn from the
    given distribution; both step independently by +/-2 each time unit;
    T is the first n >= 1 with X_n = Y_n.  Draws are keyed per
    (trial, step), so the curve is reproducible bit-exactly for a given
    seed and independent of how trials are sharded or vectorized.
    """
    N = chain.num_states
    if N % 2 == 0:
        raise EvenStateCount(f"coupling needs odd N to meet, got {N}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    start, ydist = init
    if not isinstance(ydist, Distribution) or ydist.kind != "probability":
        raise ValueError("init must be (state, probability Distribution)")
    if len(ydist.weights) != N:
        raise LengthMismatch(
            f"init distribution has {len(ydist.weights)} entries, chain has {N} states"
        )

    lane = np.arange(trials, dtype=np.uint64)
    u = uniform01(seed, lane, np.uint64(0))
    cdf = np.cumsum(ydist.weights)
    y = np.minimum(np.searchsorted(cdf, u, side="right"), N - 1).astype(np.int64)
    x = np.full(trials, start % N, dtype=np.int64)

    alive = np.ones(trials, dtype=bool)
    survival = np.empty(n_max + 1)
    survival[0] = 1.0  # T >= 1 by definition
    for n in range(1, n_max + 1):
        sx = signs(seed, lane, np.uint64(2 * n))
        sy = signs(seed, lane, np.uint64(2 * n + 1))
        x = (x + 2 * sx) % N
        y = (y + 2 * sy) % N
        alive &= x != y
        survival[n] = alive.mean()
    return survival


def equilibrium_time_log_bound(num_states: int) -> float:
    """Natural log of 16 * 4^N * ln(N) / N (any N >= 3)."""
    if num_states < 3:
        raise ValueError(f"need N >= 3, got {num_states}")
    N = num_states
    return math.log(16.0) + N * math.log(4.0) + math.log(math.log(N)) - math.log(N)


def equilibrium_time_bound(num_states: int) -> float:
    """The time threshold 16 * 4^N * ln(N) / N after which the chain is mixed.

    Astronomically loose compared to the observed spectral rate, but it
    is the bound the theory provides; computed in log space, so the
    return value overflows to inf only when the number itself exceeds
    float range (N around 510).
    """
    if num_states % 2 == 0:
        raise EvenStateCount(f"equilibrium bound needs odd N, got {num_states}")
    logv = equilibrium_time_log_bound(num_states)
    if logv > 709.0:
        return math.inf
    return math.exp(logv)
