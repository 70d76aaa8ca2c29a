"""Coefficient decay of restricted samples: smooth data vs a ramp.

Smooth data satisfies |coeff(m)| <= (G pi^2 / 4) / m^2 with G a fixed
second-derivative budget; the discontinuous ramp only decays like 1/m
and blows through any fixed budget at low modes.  Also shows the
restricted symbol theta(1) approaching the classical -1.
"""

import numpy as np

import circleheat as ch


def main():
    for name, fn, budget in (
        ("smooth trig", lambda x: np.cos(x) + 0.4 * np.sin(3.0 * x), 10.0),
        ("ramp x", lambda x: x, 10.0),
    ):
        print(f"--- {name}, fixed second-derivative budget G = {budget} ---")
        for n in (64, 256, 1024):
            g = ch.pi_grid(n)
            f = ch.sample(g, fn)
            measured = ch.decay_check(f)
            fixed = ch.decay_check(f, second_derivative_bound=budget)
            print(f"  n = {n:>5}: measured G = {measured.second_derivative_max:>10.2f} "
                  f"(ok = {measured.ok});  fixed G: ok = {fixed.ok}"
                  + ("" if fixed.ok else
                     f", worst mode {fixed.worst_mode}, excess {fixed.worst_excess:.4f}"))
        print()

    print("restricted second-derivative symbol at mode 1 (classical value -1):")
    for n in (64, 256, 1024, 4096):
        mult = ch.multipliers(ch.pi_grid(n))
        theta1 = mult.theta_at(1)
        print(f"  n = {n:>5}: theta(1) = {theta1.real:+.8f}  |theta(1) + 1| = "
              f"{abs(theta1 + 1.0):.3e}")


if __name__ == "__main__":
    main()
