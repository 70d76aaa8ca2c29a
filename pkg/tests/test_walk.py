"""Ensembles of +/-2 walkers: exact enumeration vs binomial weights."""

import math

import numpy as np
import pytest

from circleheat import (
    GridFunction,
    GridMismatch,
    KappaTooLarge,
    NegativeInitial,
    WalkEnsemble,
    binomial_weights,
    chain_coupling,
    density_binomial,
    density_enumerate,
    evolve,
    unit_grid,
)
from circleheat import rng
from circleheat.walk import popcount64


def random_density(grid, seed):
    w = rng.uniform01(seed, np.arange(grid.n_pts, dtype=np.int64))
    return GridFunction(grid, w + 0j)


def test_popcount_against_python_int():
    xs = rng.counter_hash(77, np.arange(200, dtype=np.int64))
    expect = np.array([bin(int(x)).count("1") for x in xs])
    assert np.array_equal(popcount64(xs), expect)
    assert int(popcount64(np.uint64(0))) == 0
    assert int(popcount64(np.uint64(2**64 - 1))) == 64


def test_step_zero_returns_initial():
    g = unit_grid(7)
    f = random_density(g, 1)
    w = WalkEnsemble(g, 5, f)
    assert np.array_equal(density_enumerate(w, 0).values, f.values)
    assert np.array_equal(density_binomial(w, 0).values, f.values)


def test_delta_first_steps_exact():
    g = unit_grid(5)
    v = np.zeros(5)
    v[0] = 1.0
    w = WalkEnsemble(g, 4, GridFunction(g, v + 0j))
    one = density_enumerate(w, 1).values.real
    assert np.array_equal(one, np.array([0.0, 0.0, 0.5, 0.5, 0.0]))
    two = density_enumerate(w, 2).values.real
    assert np.array_equal(two, np.array([0.5, 0.25, 0.0, 0.0, 0.25]))


def test_enumeration_matches_binomial():
    # the 2^step enumeration never invokes a binomial identity, so this
    # pins the combinatorial shortcut to an independent computation
    for n_pts in (5, 8):
        g = unit_grid(n_pts)
        f = random_density(g, n_pts)
        w = WalkEnsemble(g, 12, f)
        for step in range(13):
            a = density_enumerate(w, step).values
            b = density_binomial(w, step).values
            assert np.max(np.abs(a - b)) < 1e-14, (n_pts, step)


def test_binomial_weights_small_exact():
    assert np.array_equal(binomial_weights(0), np.array([1.0]))
    assert np.array_equal(binomial_weights(3), np.array([1.0, 3.0, 3.0, 1.0]) / 8.0)


def test_binomial_weights_tail_path_accurate():
    # above the exact-integer cap the log-gamma path takes over; compare
    # to exact rationals
    wts = binomial_weights(61)
    exact = np.array([math.comb(61, k) for k in range(62)], dtype=object)
    exact = np.array([float(c) for c in exact]) / float(2**61)
    rel = np.max(np.abs(wts - exact) / exact)
    assert rel < 1e-12, f"rel {rel:.3e}"
    assert wts.sum() == pytest.approx(1.0, abs=1e-12)


def test_density_mass_and_sign():
    g = unit_grid(9)
    f = random_density(g, 3)
    w = WalkEnsemble(g, 50, f)
    m0 = f.values.real.sum()
    for step in (1, 7, 50):
        d = density_binomial(w, step).values.real
        assert np.all(d >= -1e-15)
        assert d.sum() == pytest.approx(m0, rel=1e-13)


def test_parity_support_on_even_grid():
    # offsets are 2*(2k - n), so from a point mass the support after n
    # steps sits on the single residue class 2n mod 4
    g = unit_grid(8)
    v = np.zeros(8)
    v[0] = 1.0
    w = WalkEnsemble(g, 5, GridFunction(g, v + 0j))
    for step in (1, 3, 5):
        d = density_binomial(w, step).values.real
        allowed = {(2 * (2 * k - step)) % 8 for k in range(step + 1)}
        for j in range(8):
            if j not in allowed:
                assert d[j] == 0.0, (step, j)
        assert all(j % 4 == (2 * step) % 4 for j in allowed)


def test_density_equals_stencil_evolution():
    # the walker density and the stencil at the coupling value are the
    # same linear map
    g = unit_grid(11)
    f = random_density(g, 5)
    p = chain_coupling(g)
    w = WalkEnsemble(g, 200, f)
    for step in (1, 17, 200):
        a = density_binomial(w, step).values
        b = evolve(p, f, step).values
        assert np.max(np.abs(a - b)) < 1e-13, step


def test_enumeration_cap():
    g = unit_grid(5)
    w = WalkEnsemble(g, 25, random_density(g, 7))
    with pytest.raises(KappaTooLarge):
        density_enumerate(w, 25)
    with pytest.raises(ValueError):
        density_enumerate(WalkEnsemble(g, 4, random_density(g, 7)), 5)


def test_ensemble_validation():
    g = unit_grid(5)
    with pytest.raises(NegativeInitial):
        WalkEnsemble(g, 3, GridFunction(g, np.array([1.0, -0.1, 0.0, 0.0, 0.0]) + 0j))
    with pytest.raises(NegativeInitial):
        WalkEnsemble(g, 3, GridFunction(g, np.array([1.0, 1j, 0.0, 0.0, 0.0])))
    with pytest.raises(GridMismatch):
        WalkEnsemble(g, 3, random_density(unit_grid(7), 1))
    with pytest.raises(ValueError):
        WalkEnsemble(g, -1, random_density(g, 1))
