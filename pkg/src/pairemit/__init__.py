"""Emission patterns of a two-atom system after single-photon absorption.

The package compares two rival post-absorption hypotheses: a persisting
two-particle superposition versus a vacuum-induced equal-weight mixture of the
same components. Everything is driven by the table of inner products among ten
labeled one-particle CM states; closed-form normalizations and kernels are
cross-checked by a brute-force tensor oracle.
"""

from .emission import (
    CurveComparison,
    EmissionCurve,
    RadiativeCoupling,
    RateSet,
    compare,
    curve_set,
    distinguishable_curves,
    emission_curve,
    kernel_mix_phi,
    kernel_mix_psi,
    kernel_superposition,
    mixture_curve,
    rate,
    rate_set,
)
from .errors import (
    DimensionMismatch,
    ExcitedLabelError,
    GridMismatch,
    GridTooCoarse,
    InvalidScene,
    InvalidTable,
    InvalidTimeGrid,
    NoExcitedComponent,
    OutOfRange,
    PairEmitError,
    UnequalWidths,
    ZeroNormState,
)
from .gaussian import (
    GaussianPacket,
    QuadratureGrid,
    Scene,
    apply_recoil,
    build_overlap_table,
    free_evolve,
    overlap,
    overlap_quadrature,
)
from .oracle import (
    CampaignReport,
    GramContext,
    TensorState,
    TensorTerm,
    apply_dipole,
    build_state,
    inner,
    kernel_bruteforce,
    random_psd_table,
    run_campaign,
)
from .scenario import Fig2Params, fig2_curves, fig2_table, scan
from .states import (
    LABELS,
    ExchangeSymmetry,
    NormalizationSet,
    OverlapTable,
    StateLabel,
    ValidationReport,
    n0,
    n_abs,
    n_omega_sp,
    n_phi_omega,
    n_psi_omega,
    normalizations,
    validate,
)

__version__ = "0.1.0"
