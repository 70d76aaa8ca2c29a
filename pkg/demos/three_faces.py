"""One initial bump pushed through all four faces of the same flow.

The +/-2 Markov chain, the explicit stencil at its coupling value, the
binomial walker density, and diagonal spectral propagation are the same
linear map; this prints their pairwise gaps at a few checkpoints.
"""

import numpy as np

import circleheat as ch


def main():
    n_pts = 101
    g = ch.unit_grid(n_pts)
    p = ch.chain_coupling(g)
    chain = ch.ChainSpec(n_pts)

    x = g.points()
    bump = np.exp(-200.0 * (x - 0.5) ** 2)
    bump /= bump.sum()

    f = ch.GridFunction(g, bump + 0j)
    d = ch.Distribution(bump.copy())
    walk = ch.WalkEnsemble(g, 5000, f)

    print(f"n = {n_pts}, nu = {p.nu:.1f} steps per unit time (2r = {2 * p.r:.3f})")
    print(f"{'step':>6} {'chain-stencil':>14} {'chain-walk':>14} {'stencil-spectral':>17}")
    cur = f
    done = 0
    for cp in (1, 10, 100, 1000, 5000):
        cur = ch.evolve(p, cur, cp - done)
        for _ in range(cp - done):
            d = ch.step(chain, d)
        done = cp
        dens = ch.density_binomial(walk, cp).values.real
        spec = ch.spectral_propagate(f, p.nu, cp).values.real
        s = cur.values.real
        print(f"{cp:>6} {np.max(np.abs(d.weights - s)):>14.3e} "
              f"{np.max(np.abs(d.weights - dens)):>14.3e} "
              f"{np.max(np.abs(s - spec)):>17.3e}")

    mean = ch.mean_value(f).real
    print(f"\nafter {done} steps: max |profile - mean| = "
          f"{np.max(np.abs(cur.values.real - mean)):.3e} (mean = {mean:.6f})")


if __name__ == "__main__":
    main()
