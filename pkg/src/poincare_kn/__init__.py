"""Sharp Poincare-Wirtinger constants for the p-variation on complete graphs K_n."""
from .constants import (
    Formula,
    Regime,
    RegimeKind,
    SharpConstant,
    a_n_threshold,
    c_dirac,
    c_symmetric,
    c_two_level,
    candidate_max,
    delta1,
    delta2,
    gap_interval,
    in_A_n,
    regime,
)
from .core import deviation_power, mean, normalize, p_variation, rayleigh_quotient, sort_descending
from .errors import (
    BadBlockSize,
    BadParameter,
    ConstantFunction,
    DomainError,
    NonConvergence,
    SharpnessViolation,
    TooLarge,
)
from .families import (
    Family,
    FamilyLabel,
    G_function,
    T_function,
    alpha_function,
    dirac,
    lemma_quotient,
    three_level,
    two_level,
)
from .optimizer import (
    GapRow,
    OptimizationReport,
    classify_maximizer,
    grid_search,
    multistart_ascent,
    scan_gap,
    stationarity_residual,
    verify_sharpness,
)
from .proofcheck import CheckReport, run_suite

__version__ = "0.1.0"
