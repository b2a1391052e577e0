"""SU(2)-valued nonlinear Fourier transform on the circle.

Forward transform of a compactly supported sequence, spectral
completion of the missing outer component, inversion by
Riemann-Hilbert layer stripping, and instance-level verification of
the governing identities and estimates.
"""

from .core import (
    BeurlingWeight,
    CoefficientSequence,
    GridFunction,
    NlftPair,
    convolve,
    default_grid_size,
    derivative,
    determinant_residual,
    fractional_derivative,
    from_grid,
    max_abs_difference,
    pair_from_sequences,
    reciprocal_on_grid,
    sequences_allclose,
    sobolev_norm,
    star_reflect,
    to_grid,
    weighted_l1_norm,
)
from .errors import (
    CombinatoricsError,
    ConsistencyError,
    ConvergenceError,
    DeterminantError,
    GridSizeError,
    NlftError,
    NumericalError,
    OuternessError,
    SzegoMarginError,
    ValidationError,
    VanishingSymbolError,
    WeightError,
)
from .forward import (
    a_star_at_zero,
    multilinear_partial_sum,
    multilinear_term,
    nlft_forward,
    single_factor,
    su2_product,
)
from .inverse import (
    InverseReport,
    RhSolution,
    RhSystem,
    apply_m,
    first_certified_index,
    inverse_nlft,
    inverse_nlft_detailed,
    layer_strip,
    layer_strip_detailed,
    reflect_pair,
    rh_solve,
    solvability_certificate,
)
from .spectral import (
    grid_quotient,
    outer_complement,
    symbol_ratio,
    symbol_tail_mass,
    winding_number,
)
from .verify import (
    CheckRecord,
    VerificationReport,
    check_antisymmetry,
    check_contraction,
    check_decay_first_order,
    check_decay_fractional,
    check_determinant,
    check_lu_factorization,
    check_plancherel,
    check_quantitative_baxter,
    check_round_trip,
    check_sinh_bound,
    decay_table,
    run_pair_checks,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BeurlingWeight",
    "CheckRecord",
    "CoefficientSequence",
    "CombinatoricsError",
    "ConsistencyError",
    "ConvergenceError",
    "DeterminantError",
    "GridFunction",
    "GridSizeError",
    "InverseReport",
    "NlftError",
    "NlftPair",
    "NumericalError",
    "OuternessError",
    "RhSolution",
    "RhSystem",
    "SzegoMarginError",
    "ValidationError",
    "VanishingSymbolError",
    "VerificationReport",
    "WeightError",
    "a_star_at_zero",
    "apply_m",
    "check_antisymmetry",
    "check_contraction",
    "check_decay_first_order",
    "check_decay_fractional",
    "check_determinant",
    "check_lu_factorization",
    "check_plancherel",
    "check_quantitative_baxter",
    "check_round_trip",
    "check_sinh_bound",
    "convolve",
    "decay_table",
    "default_grid_size",
    "derivative",
    "determinant_residual",
    "first_certified_index",
    "fractional_derivative",
    "from_grid",
    "grid_quotient",
    "inverse_nlft",
    "inverse_nlft_detailed",
    "layer_strip",
    "layer_strip_detailed",
    "max_abs_difference",
    "multilinear_partial_sum",
    "multilinear_term",
    "nlft_forward",
    "outer_complement",
    "pair_from_sequences",
    "reciprocal_on_grid",
    "reflect_pair",
    "rh_solve",
    "run_pair_checks",
    "run_suite",
    "sequences_allclose",
    "single_factor",
    "sobolev_norm",
    "solvability_certificate",
    "star_reflect",
    "su2_product",
    "symbol_ratio",
    "symbol_tail_mass",
    "to_grid",
    "weighted_l1_norm",
    "winding_number",
]
