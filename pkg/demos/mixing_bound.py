"""Exact chain mixing against the ((4^N-1)/4^N)^(n/2N-1) envelope.

Prints the exact total variation distance from uniform, the analytic
envelope, and a Monte-Carlo coupling survival curve side by side, then
shows how hollow the envelope is compared to the true spectral rate.
"""

import numpy as np

import circleheat as ch


def main():
    N = 9
    chain = ch.ChainSpec(N)
    surv = ch.coupling_simulate(chain, (0, ch.uniform(N)), n_max=120, trials=50_000, seed=1)

    print(f"chain on {N} states, delta start, coupling partner at uniform")
    print(f"{'n':>4} {'tv_exact':>12} {'envelope':>12} {'P(T > n)':>12}")
    d = ch.delta(N, 0)
    for n in range(0, 121):
        if n % 12 == 0:
            tv = ch.tv_distance_to_uniform(chain, d)
            print(f"{n:>4} {tv:>12.3e} {ch.epsilon_bound(N, n):>12.8f} {surv[n]:>12.4f}")
        d = ch.step(chain, d)

    # the envelope needs ~2N log(1/eps) / log(4^N/(4^N-1)) steps to reach
    # eps; the spectral gap reaches it exponentially faster
    print(f"\nequilibrium-time bound (time units): {ch.equilibrium_time_bound(N):.3e}")
    lam = max(abs(1.0 - 2.0 * np.sin(np.pi * 2 * k / N) ** 2) for k in range(1, N))
    print(f"true slowest factor per step:        {lam:.6f}"
          f"  (reaches 1e-6 in ~{int(np.log(1e-6) / np.log(lam)) + 1} steps)")


if __name__ == "__main__":
    main()
