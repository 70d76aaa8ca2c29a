"""Experiment driver: one subcommand per representation or bound.

Exit codes: 0 success, 2 parameter/input validation failure, 3 when
`compare` ran to completion but the cross-representation discrepancy
exceeded the tolerance (so scripts can tell "bound failed" from "could
not run").  Output is deterministic — fixed column orders, 17
significant digits, no timestamps — so a rerun with the same flags and
seed is byte-identical.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import clt, heat, markov, martingale, rng, spectral
from .grid import GridFunction, read_grid_function, write_grid_function
from .walk import WalkEnsemble, density_binomial


class ValidationFailure(Exception):
    """Bad flags or inputs: reported on stderr, exit code 2."""


class ThresholdViolation(Exception):
    """`compare` ran but the representations disagreed: exit code 3."""


def _num(x) -> str:
    return "%.17g" % x


def emit_csv(path, header, rows) -> None:
    """Fixed-order CSV with 17-significant-digit numbers."""
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_num(c) for c in row) + "\n")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValidationFailure(msg)


def _read_input(path) -> GridFunction:
    return read_grid_function(path)


def _require_stable(grid, nu: float) -> heat.SchemeParams:
    p = heat.SchemeParams(grid, nu)
    if not p.stable:
        raise ValidationFailure(
            f"2r = {2.0 * p.r:.6g} violates the stability bound 2r <= 1; "
            f"pick nu >= {1.0 / (2.0 * grid.spacing ** 2):.6g}"
        )
    return p


def _warn_parity(f: GridFunction) -> None:
    if f.grid.n_pts % 2 == 0:
        v = np.abs(f.values)
        if np.any(v[0::2] != 0) and np.any(v[1::2] != 0):
            print(
                "note: even grid with parity-mixed support; the +/-2 stencil "
                "evolves the even and odd sublattices independently",
                file=sys.stderr,
            )


def _real_values(f: GridFunction, what: str) -> np.ndarray:
    if np.any(f.values.imag != 0):
        raise ValidationFailure(f"{what} must be real-valued")
    return f.values.real.copy()


# ---------------------------------------------------------------- subcommands


def _cmd_evolve(args) -> int:
    _require(args.steps >= 0, f"--steps must be >= 0, got {args.steps}")
    f = _read_input(args.grid_file)
    p = _require_stable(f.grid, args.nu)
    _warn_parity(f)
    out = heat.evolve(p, f, args.steps)
    write_grid_function(out, args.out)
    print(f"evolved {args.steps} steps at nu = {_num(args.nu)}; wrote {args.out}")
    return 0


def _cmd_compare(args) -> int:
    _require(args.steps >= 0, f"--steps must be >= 0, got {args.steps}")
    _require(args.tolerance > 0, f"--tolerance must be positive, got {args.tolerance}")
    f = _read_input(args.grid_file)
    init = _real_values(f, "compare initial data")
    if np.any(init < 0):
        raise ValidationFailure("compare initial data must be nonnegative")
    _warn_parity(f)

    p = heat.chain_coupling(f.grid)
    stencil = heat.evolve(p, f, args.steps).values.real

    d = markov.Distribution(init, kind="signed")
    chain = markov.ChainSpec(f.grid.n_pts)
    for _ in range(args.steps):
        d = markov.step(chain, d)
    chain_vals = d.weights

    walker = density_binomial(
        WalkEnsemble(f.grid, args.steps, GridFunction(f.grid, init)), args.steps
    ).values.real

    gaps = {
        "chain_vs_stencil": float(np.max(np.abs(chain_vals - stencil))),
        "chain_vs_walk": float(np.max(np.abs(chain_vals - walker))),
        "stencil_vs_walk": float(np.max(np.abs(stencil - walker))),
    }
    worst = max(gaps.values())

    if args.out:
        emit_csv(
            args.out,
            ["index", "chain", "stencil", "walk"],
            [
                (i, chain_vals[i], stencil[i], walker[i])
                for i in range(f.grid.n_pts)
            ],
        )
    for name, gap in gaps.items():
        print(f"{name}: max abs gap = {_num(gap)}")
    print(f"max pairwise discrepancy = {_num(worst)} (tolerance {_num(args.tolerance)})")
    if worst > args.tolerance:
        raise ThresholdViolation(
            f"representations disagree: {_num(worst)} > {_num(args.tolerance)}"
        )
    return 0


def _cmd_mixing(args) -> int:
    n_states = args.states
    _require(n_states >= 3, f"--states must be >= 3, got {n_states}")
    _require(n_states % 2 == 1, f"mixing needs an odd state count, got {n_states}")
    _require(n_states <= 2048, f"--states capped at 2048, got {n_states}")
    _require(args.steps >= 0, f"--steps must be >= 0, got {args.steps}")
    _require(args.trials >= 1, f"--trials must be >= 1, got {args.trials}")

    chain = markov.ChainSpec(n_states)
    survival = markov.coupling_simulate(
        chain, (0, markov.uniform(n_states)), args.steps, args.trials, args.seed
    )
    rows = []
    d = markov.delta(n_states, 0)
    for n in range(args.steps + 1):
        rows.append(
            (
                n,
                markov.tv_distance_to_uniform(chain, d),
                markov.epsilon_bound(n_states, n),
                survival[n],
            )
        )
        d = markov.step(chain, d)
    emit_csv(args.out, ["n", "tv_exact", "epsilon_bound", "coupling_survival"], rows)
    print(f"wrote {args.steps + 1} rows to {args.out}")
    return 0


def _cmd_clt_error(args) -> int:
    try:
        n_list = [int(s) for s in args.n_list.split(",") if s.strip()]
    except ValueError as exc:
        raise ValidationFailure(f"--n-list must be comma-separated integers: {exc}")
    _require(bool(n_list), "--n-list is empty")
    for n in n_list:
        _require(n >= 3 and n % 2 == 1, f"--n-list entries must be odd >= 3, got {n}")
    prof = clt.clt_error_profile(n_list)
    emit_csv(args.out, ["n", "max_err", "scaled_err"], [tuple(r) for r in prof])
    print(f"wrote {len(n_list)} rows to {args.out}")
    return 0


def _cmd_spectral(args) -> int:
    _require(args.steps >= 0, f"--steps must be >= 0, got {args.steps}")
    f = _read_input(args.grid_file)
    _require_stable(f.grid, args.nu)

    spec0 = spectral.fourier_coeffs(f)
    evolved = spectral.spectral_propagate(f, args.nu, args.steps)
    spec1 = spectral.fourier_coeffs(evolved)

    header = ["m", "re_init", "im_init", "re_evolved", "im_evolved"]
    cols = [
        spec0.modes,
        spec0.coeffs.real,
        spec0.coeffs.imag,
        spec1.coeffs.real,
        spec1.coeffs.imag,
    ]
    if args.compare_classical:
        t = args.steps / args.nu
        spec_cl = spectral.fourier_coeffs(spectral.classical_solution(spec0, t))
        header += ["re_classical", "im_classical", "abs_deviation"]
        cols += [
            spec_cl.coeffs.real,
            spec_cl.coeffs.imag,
            np.abs(spec1.coeffs - spec_cl.coeffs),
        ]
    emit_csv(args.out, header, zip(*cols))
    print(f"wrote {f.grid.n_pts} modes to {args.out}")
    return 0


def _cmd_kernel_solve(args) -> int:
    f = _read_input(args.grid_file)
    _require(args.t > 0, f"--t must be positive, got {args.t}")
    out = clt.heat_kernel_convolution(f, clt.KernelSpec.for_grid(f.grid, args.t))
    write_grid_function(out, args.out)
    print(f"convolved with the t = {_num(args.t)} kernel; wrote {args.out}")
    return 0


def _cmd_martingale_check(args) -> int:
    _require(args.eta >= 3, f"--eta must be >= 3, got {args.eta}")
    _require(1 <= args.kappa <= 16, f"--kappa must be in 1..16, got {args.kappa}")
    if args.init:
        f = _read_input(args.init)
        _require(
            f.grid.n_pts == args.eta,
            f"init file has {f.grid.n_pts} points, --eta says {args.eta}",
        )
        init = _real_values(f, "martingale initial data")
    else:
        init = rng.uniform01(args.seed, np.arange(args.eta, dtype=np.int64))

    field = martingale.build_reverse_field(
        martingale.evolve_snapshots(init, args.kappa), args.kappa
    )
    report = martingale.martingale_check(field)
    for frm, to, dev in report.pairs:
        print(f"E(level {frm} | algebra {to}): max deviation = {_num(dev)}")
    fk_gap = float(
        np.max(np.abs(martingale.feynman_kac_readout(field) - field.levels[args.kappa]))
    )
    print(f"feynman-kac readout vs final level: max deviation = {_num(fk_gap)}")
    status = "ok" if report.ok else "VIOLATED"
    print(
        f"max deviation = {_num(report.max_deviation)} over {len(report.pairs)} "
        f"level pairs (scale {_num(report.scale)}): {status}"
    )
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="circleheat",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("evolve", help="explicit stencil evolution of a grid file")
    p.add_argument("--grid-file", required=True, help="input grid-function file")
    p.add_argument("--nu", type=float, required=True, help="time density nu (steps per unit time)")
    p.add_argument("--steps", type=int, required=True, help="number of explicit steps")
    p.add_argument("--out", required=True, help="output grid-function file")
    p.set_defaults(fn=_cmd_evolve)

    p = sub.add_parser(
        "compare",
        help="run chain, stencil, and walk representations; exit 3 if they disagree",
    )
    p.add_argument("--grid-file", required=True, help="nonnegative real initial data")
    p.add_argument("--steps", type=int, required=True, help="steps at the chain coupling 2r = 1")
    p.add_argument("--tolerance", type=float, default=1e-10, help="max allowed pairwise gap")
    p.add_argument("--out", default=None, help="optional CSV of all three value vectors")
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("mixing", help="exact TV distance vs the mixing bound, plus coupling")
    p.add_argument("--states", type=int, required=True, help="odd state count N >= 3")
    p.add_argument("--steps", type=int, required=True, help="largest step n to tabulate")
    p.add_argument("--trials", type=int, default=10000, help="coupling trials")
    p.add_argument("--seed", type=int, default=0, help="counter-RNG seed")
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(fn=_cmd_mixing)

    p = sub.add_parser("clt-error", help="pointwise binomial-vs-Gaussian error profile")
    p.add_argument("--n-list", required=True, help="comma-separated odd n values, e.g. 3,5,101")
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(fn=_cmd_clt_error)

    p = sub.add_parser("spectral", help="per-mode coefficients before/after propagation")
    p.add_argument("--grid-file", required=True, help="input grid-function file")
    p.add_argument("--nu", type=float, required=True, help="time density nu")
    p.add_argument("--steps", type=int, required=True, help="propagation steps")
    p.add_argument(
        "--compare-classical",
        action="store_true",
        help="add smooth-solution columns at t = steps/nu",
    )
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(fn=_cmd_spectral)

    p = sub.add_parser("kernel-solve", help="periodic heat-kernel convolution of a grid file")
    p.add_argument("--grid-file", required=True, help="input grid-function file")
    p.add_argument("--t", type=float, required=True, help="diffusion time (> 0)")
    p.add_argument("--out", required=True, help="output grid-function file")
    p.set_defaults(fn=_cmd_kernel_solve)

    p = sub.add_parser(
        "martingale-check", help="reverse-martingale identity on the dyadic field"
    )
    p.add_argument("--eta", type=int, required=True, help="circle size (>= 3)")
    p.add_argument("--kappa", type=int, required=True, help="refinement depth (1..16)")
    p.add_argument("--init", default=None, help="optional grid-function file (else random)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random initial data")
    p.set_defaults(fn=_cmd_martingale_check)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ThresholdViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
