"""Solving the flow by convolving with the continuum heat kernel.

The stencil run and the truncated-Gaussian convolution agree to a few
times 1e-6 on smooth data at practical resolutions, and the gap shrinks
under refinement; the parity-respecting lattice kernel at matched times
agrees with the plain one to roundoff.
"""

import numpy as np

import circleheat as ch


def smooth(x):
    return (1.0 + 0.7 * np.sin(2 * np.pi * x) + 0.5 * np.cos(4 * np.pi * x)
            + 0.2 * np.sin(6 * np.pi * x))


def main():
    t = 0.1
    print(f"t = {t}: explicit stencil vs truncated-kernel convolution")
    for n in (256, 512, 1024):
        g = ch.unit_grid(n)
        p = ch.chain_coupling(g)
        f = ch.sample(g, smooth)
        steps = int(round(p.nu * t))
        t_eff = steps / p.nu
        ev = ch.evolve(p, f, steps)
        kc = ch.heat_kernel_convolution(f, ch.KernelSpec.for_grid(g, t_eff))
        err = np.max(np.abs(ev.values - kc.values))
        print(f"  n = {n:>5} ({steps:>6} steps): max gap = {err:.3e}")

    print("\nparity-respecting lattice kernel vs plain kernel (same data):")
    for n in (64, 128, 256):
        g = ch.unit_grid(n)
        nu = 1.0 / (2.0 * g.spacing**2)
        kappa = int(round(0.05 * nu))
        f = ch.sample(g, smooth)
        gap = ch.kernel_parity_gap(f, kappa, nu)
        print(f"  n = {n:>4}, kappa = {kappa:>5}: relative gap = {gap:.3e}")


if __name__ == "__main__":
    main()
