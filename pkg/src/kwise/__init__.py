"""k-wise independent sign vectors: exact moments and extremal constants.

The package has three layers.  `core`, `constructions`, `independence`, and
`moments` handle finite sign laws with exact rational arithmetic: building
k-wise independent sample spaces, checking independence through parity
expectations, and computing p-th moments of weighted sign sums.  `extremal`
and `simplex` find the largest such moment over all k-wise independent laws
by exact rational linear programming, with independently verified optimality
certificates.  `bounds`, `intervals`, and `sampler` supply the closed-form
comparison constants, certified enclosures for irrational values, and a
deterministic Monte Carlo stream.
"""

from .bounds import haagerup_constant, interpolation_bound, sharp_pairwise_value
from .constructions import (
    independent_space,
    partition_space,
    xor_seed_coefficient,
    xor_sign,
    xor_space,
)
from .core import (
    MAX_DIMENSION,
    MAX_ENUMERATION,
    SampleSpace,
    SignVector,
    WeightProfile,
    expand,
    project_marginal,
    symmetrize,
    uniform_cube,
)
from .extremal import (
    EqualityReport,
    LpSolution,
    ReducedLp,
    equality_support_check,
    full_constraint_labels,
    parity_class_coefficient,
    parity_class_sum,
    reduced_lp,
    solve_full,
    solve_reduced,
    uniqueness_check,
)
from .independence import (
    IndependenceReport,
    check_exchangeable,
    check_kwise,
    check_kwise_marginal,
    fourier_coefficient,
)
from .intervals import DEFAULT_PREC, Interval
from .moments import (
    MomentResult,
    Weights,
    even_moment_independent,
    khintchine_ratio,
    pth_moment,
    ratio_from_moment,
)
from .sampler import McEstimate, Stream, StreamSpec, XorDraw, estimate_moment, sample
from .simplex import ExactSimplex, SimplexResult, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PREC",
    "EqualityReport",
    "ExactSimplex",
    "IndependenceReport",
    "Interval",
    "LpSolution",
    "MAX_DIMENSION",
    "MAX_ENUMERATION",
    "McEstimate",
    "MomentResult",
    "ReducedLp",
    "SampleSpace",
    "SignVector",
    "SimplexResult",
    "Stream",
    "StreamSpec",
    "WeightProfile",
    "Weights",
    "XorDraw",
    "check_exchangeable",
    "check_kwise",
    "check_kwise_marginal",
    "equality_support_check",
    "estimate_moment",
    "even_moment_independent",
    "expand",
    "fourier_coefficient",
    "full_constraint_labels",
    "haagerup_constant",
    "independent_space",
    "interpolation_bound",
    "khintchine_ratio",
    "parity_class_coefficient",
    "parity_class_sum",
    "partition_space",
    "project_marginal",
    "pth_moment",
    "ratio_from_moment",
    "reduced_lp",
    "sample",
    "sharp_pairwise_value",
    "solve_full",
    "solve_reduced",
    "symmetrize",
    "uniform_cube",
    "uniqueness_check",
    "xor_seed_coefficient",
    "xor_sign",
    "xor_space",
]
