"""Discrete circle geometry, grid functions, and exact difference calculus.

The circle of circumference L is sampled at n equispaced points
x_i = origin + i*L/n with periodic index arithmetic.  Integration is the
counting-measure sum h * sum(f) with h = L/n.  Every operator here is a
finite sum over grid values, so the identities exercised by the test
suite (summation by parts, product rule, shift/derivative commutation,
restriction) hold to roundoff and nothing more.

Two conventions are used throughout the package: the unit circle [0, 1)
with origin 0, and [-pi, pi) with origin -pi.  They differ by a pure
rescale, so one grid type serves both.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class OddGridError(ValueError):
    """Restriction to the half grid needs an even point count."""


class GridMismatch(ValueError):
    """Operands live on different grids."""


@dataclass(frozen=True)
class CircleGrid:
    """n_pts equispaced points on a circle of the given circumference."""

    n_pts: int
    circumference: float = 1.0
    origin: float = 0.0

    def __post_init__(self):
        if self.n_pts < 4:
            raise ValueError(f"need at least 4 grid points, got {self.n_pts}")
        if not self.circumference > 0:
            raise ValueError(f"circumference must be positive, got {self.circumference}")

    @property
    def spacing(self) -> float:
        return self.circumference / self.n_pts

    def points(self) -> np.ndarray:
        return self.origin + np.arange(self.n_pts) * self.spacing

    def point(self, i: int) -> float:
        return self.origin + (i % self.n_pts) * self.spacing


def unit_grid(n_pts: int) -> CircleGrid:
    """The [0, 1) convention."""
    return CircleGrid(n_pts, 1.0, 0.0)


def pi_grid(n_pts: int) -> CircleGrid:
    """The [-pi, pi) convention."""
    return CircleGrid(n_pts, 2.0 * np.pi, -np.pi)


@dataclass
class GridFunction:
    """Complex values attached to the points of a CircleGrid."""

    grid: CircleGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.n_pts,):
            raise ValueError(
                f"expected {self.grid.n_pts} values, got shape {vals.shape}"
            )
        self.values = vals

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time lattice: step j happens at time j/nu, up to a fixed horizon.

    Nothing past the horizon is ever evaluated; callers that need a later
    time must build a longer TimeGrid.
    """

    nu: float
    horizon_steps: int

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.horizon_steps < 0:
            raise ValueError(f"horizon_steps must be >= 0, got {self.horizon_steps}")

    def time_of(self, j: int) -> float:
        if not 0 <= j <= self.horizon_steps:
            raise ValueError(
                f"step {j} outside the horizon 0..{self.horizon_steps}"
            )
        return j / self.nu


def sample(grid: CircleGrid, fn) -> GridFunction:
    """Sample a callable at the grid points."""
    return GridFunction(grid, np.asarray(fn(grid.points()), dtype=complex))


def _at(values: np.ndarray, k: int) -> np.ndarray:
    """The array i -> values[(i + k) mod n]."""
    return np.roll(values, -k)


def discrete_derivative(f: GridFunction) -> GridFunction:
    """Central difference (f(x_{i+1}) - f(x_{i-1})) / (2h), periodic."""
    v = f.values
    return GridFunction(f.grid, (_at(v, 1) - _at(v, -1)) / (2.0 * f.grid.spacing))


def second_derivative(f: GridFunction) -> GridFunction:
    """Wide stencil (f_{i+2} - 2 f_i + f_{i-2}) / (2h)^2.

    Identical to applying discrete_derivative twice; kept as a single
    stencil because the evolution schemes are phrased in terms of it.
    """
    v = f.values
    h2 = (2.0 * f.grid.spacing) ** 2
    return GridFunction(f.grid, (_at(v, 2) - 2.0 * v + _at(v, -2)) / h2)


def shift(f: GridFunction, direction: str) -> GridFunction:
    """Cyclic shift: 'left' yields f(x_{i+1}), 'right' yields f(x_{i-1})."""
    if direction == "left":
        return GridFunction(f.grid, _at(f.values, 1))
    if direction == "right":
        return GridFunction(f.grid, _at(f.values, -1))
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


def restrict(f: GridFunction) -> GridFunction:
    """Even-index samples of f as a function on the half grid."""
    if f.grid.n_pts % 2:
        raise OddGridError(
            f"cannot restrict a grid with odd point count {f.grid.n_pts}"
        )
    half = CircleGrid(f.grid.n_pts // 2, f.grid.circumference, f.grid.origin)
    return GridFunction(half, f.values[::2].copy())


def integral(f: GridFunction) -> complex:
    """Counting-measure integral h * sum(f)."""
    return complex(f.grid.spacing * f.values.sum())


# ---------------------------------------------------------------------------
# text format: header "n_pts circumference origin", then "index real imag"
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_grid_function(f: GridFunction, path) -> None:
    g = f.grid
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{g.n_pts} {_fmt(g.circumference)} {_fmt(g.origin)}\n")
        for i, z in enumerate(f.values):
            fh.write(f"{i} {_fmt(z.real)} {_fmt(z.imag)}\n")


def read_grid_function(path) -> GridFunction:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: line 1: empty file, expected a header")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(
            f"{path}: line 1: expected 'n_pts circumference origin', got {lines[0]!r}"
        )
    try:
        n_pts = int(head[0])
        circumference = float(head[1])
        origin = float(head[2])
    except ValueError:
        raise ValueError(f"{path}: line 1: malformed header {lines[0]!r}") from None
    try:
        grid = CircleGrid(n_pts, circumference, origin)
    except ValueError as exc:
        raise ValueError(f"{path}: line 1: {exc}") from None
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != n_pts:
        raise ValueError(
            f"{path}: expected {n_pts} value lines, found {len(body)}"
        )
    values = np.empty(n_pts, dtype=complex)
    for lineno, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(
                f"{path}: line {lineno}: expected 'index real imag', got {ln!r}"
            )
        try:
            idx = int(parts[0])
            re = float(parts[1])
            im = float(parts[2])
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: malformed numbers in {ln!r}") from None
        if idx != lineno - 2:
            raise ValueError(
                f"{path}: line {lineno}: index {idx} out of order (expected {lineno - 2})"
            )
        values[idx] = complex(re, im)
    return GridFunction(grid, values)
