"""Heat flow on a discrete circle, four equivalent ways.

The same evolution — half the mass two sites left, half two sites right
— is implemented as a Markov chain (`markov`), an explicit finite-
difference stencil (`heat`), an ensemble of independent +/-1 walkers
(`walk`, with the quantitative local CLT in `clt`), and per-mode Fourier
propagation (`spectral`).  `martingale` verifies the reverse-filtration
identity behind the probabilistic representation, and `cli` drives
reproducible experiments over all of them.
"""

from .grid import (
    CircleGrid,
    GridFunction,
    GridMismatch,
    OddGridError,
    TimeGrid,
    discrete_derivative,
    integral,
    pi_grid,
    read_grid_function,
    restrict,
    sample,
    second_derivative,
    shift,
    unit_grid,
    write_grid_function,
)
from .markov import (
    ChainSpec,
    Distribution,
    EvenStateCount,
    LengthMismatch,
    coupling_simulate,
    delta,
    epsilon_bound,
    equilibrium_time_bound,
    equilibrium_time_log_bound,
    n_step_matrix,
    one_step_matrix,
    step,
    tv_distance_to_uniform,
    uniform,
)
from .heat import (
    SchemeParams,
    UnstableParams,
    chain_coupling,
    derivative_bound_check,
    evolve,
    heat_step,
)
from .walk import (
    KappaTooLarge,
    NegativeInitial,
    WalkEnsemble,
    binomial_weights,
    density_binomial,
    density_enumerate,
)
from .clt import (
    KernelSpec,
    NonpositiveTime,
    OutOfSupport,
    WalkLaw,
    binomial_point_mass,
    characteristic_point_mass,
    clt_error_profile,
    exponent_report,
    gaussian_point_approx,
    heat_kernel,
    heat_kernel_convolution,
    kernel_parity_gap,
    parity_allowed,
    parity_kernel_convolution,
)
from .spectral import (
    DecayReport,
    Multipliers,
    OddGridForRestricted,
    Spectrum,
    character,
    classical_solution,
    decay_check,
    equilibrium_deviation_bound,
    fourier_coeffs,
    inverse,
    mean_value,
    modes_for,
    multipliers,
    phi_multiplier,
    restricted_second_derivative_identity_check,
    spectral_propagate,
)
from .martingale import (
    DyadicField,
    LevelRange,
    MartingaleReport,
    PathIndexer,
    RangeError,
    build_reverse_field,
    chain_step_vector,
    conditional_expectation,
    evolve_snapshots,
    feynman_kac_readout,
    martingale_check,
    phi_index,
)

__version__ = "0.1.0"
