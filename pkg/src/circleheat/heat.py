"""Explicit finite-difference evolution of the heat equation on the circle.

One step maps F to r*F(x_{i+2}) + (1-2r)*F(x_i) + r*F(x_{i-2}) with the
coupling r = 1/(4 h^2 nu) fixed by the grid spacing h and the time
density nu.  Under the stability condition 2r <= 1 the weights form a
convex combination, which gives conservation of the integral and the
maximum principle for free.  At exactly 2r = 1 the middle weight
vanishes and a step is one transition of the +/-2 chain applied to the
value vector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import CircleGrid, GridFunction, GridMismatch

# Roundoff guard: 1/(2 h^2) rounds, so the legitimate 2r = 1 coupling can
# land a few ulp above 1.  Anything beyond this slack is a real violation.
_STABILITY_SLACK = 1e-12


class UnstableParams(ValueError):
    """The scheme needs 2r <= 1 (r = 1/(4 h^2 nu)); these parameters break it."""


@dataclass(frozen=True)
class SchemeParams:
    grid: CircleGrid
    nu: float

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")

    @property
    def r(self) -> float:
        h = self.grid.spacing
        return 1.0 / (4.0 * h * h * self.nu)

    @property
    def stable(self) -> bool:
        return 2.0 * self.r <= 1.0 + _STABILITY_SLACK


def chain_coupling(grid: CircleGrid) -> SchemeParams:
    """Parameters with 2r = 1: nu = 1/(2 h^2), the pure +/-2 chain step."""
    h = grid.spacing
    return SchemeParams(grid, 1.0 / (2.0 * h * h))


def _check(p: SchemeParams, f: GridFunction) -> None:
    if f.grid != p.grid:
        raise GridMismatch(f"function grid {f.grid} != scheme grid {p.grid}")
    if not p.stable:
        raise UnstableParams(
            f"2r = {2.0 * p.r:.6g} > 1; pick nu >= {1.0 / (2.0 * p.grid.spacing ** 2):.6g}"
        )


def heat_step(p: SchemeParams, f: GridFunction) -> GridFunction:
    """One explicit step; preserves the integral, contracts the max norm."""
    _check(p, f)
    r = p.r
    v = f.values
    return GridFunction(
        f.grid, r * np.roll(v, -2) + (1.0 - 2.0 * r) * v + r * np.roll(v, 2)
    )


def evolve(p: SchemeParams, f: GridFunction, steps: int) -> GridFunction:
    """`steps` iterated heat steps (steps >= 0; the recursion only runs forward)."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    _check(p, f)
    r = p.r
    w0 = 1.0 - 2.0 * r
    v = f.values.copy()
    for _ in range(steps):
        v = r * np.roll(v, -2) + w0 * v + r * np.roll(v, 2)
    return GridFunction(f.grid, v)


@dataclass
class BoundCheckReport:
    """Max-norm trace of (|F|, |F'|, |F''|) along an evolution."""

    m0: float                # max of the three norms at step 0
    trace: np.ndarray        # shape (steps+1, 3)
    slack: float
    ok: bool

    @property
    def worst_excess(self) -> float:
        return float(self.trace.max() - self.m0)


def derivative_bound_check(
    p: SchemeParams, f: GridFunction, steps: int, slack: float = 1e-10
) -> BoundCheckReport:
    """Verify max{|F|, |F'|, |F''|} never exceeds its initial value.

    The scheme commutes with the difference operators (all circulants),
    so each of the three norms is individually nonexpansive under a
    stable step; this check runs the evolution and records the trace.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    _check(p, f)
    from .grid import discrete_derivative, second_derivative

    cur = f
    trace = np.empty((steps + 1, 3))
    for k in range(steps + 1):
        trace[k, 0] = cur.max_abs()
        trace[k, 1] = discrete_derivative(cur).max_abs()
        trace[k, 2] = second_derivative(cur).max_abs()
        if k < steps:
            cur = heat_step(p, cur)
    m0 = float(trace[0].max())
    ok = bool(trace.max() <= m0 + slack)
    return BoundCheckReport(m0=m0, trace=trace, slack=slack, ok=ok)
