"""Archimedean copula numerics.

Generator families (clayton, gumbel, frank, independence) with exact
pseudo-inverses, d-dimensional H-volumes by signed vertex sums, C-power
iteration with convergence traces, Archimedean-axiom witnesses, and joint
pmf tables over discrete margins.
"""

from archvol._core import (
    DEFAULT_N_MAX,
    AxiomWitness,
    Box,
    CertReport,
    CPowerTrace,
    ExhaustionError,
    Generator,
    IdempotentError,
    JointGrid,
    Partition2D,
    StepDistribution,
    StopReason,
    VerificationError,
    VolumeViolation,
    axiom_witness,
    c_power,
    cdf,
    cdf_bivariate,
    certify_df_axioms,
    copula_volume,
    cpower_trace,
    d_increasing_check,
    h_volume,
    joint_cdf,
    limit_is_zero,
    partition_volume_sum,
    pmf_table,
    recursive_volume,
    __version__,
)

__all__ = [
    "DEFAULT_N_MAX",
    "AxiomWitness",
    "Box",
    "CertReport",
    "CPowerTrace",
    "ExhaustionError",
    "Generator",
    "IdempotentError",
    "JointGrid",
    "Partition2D",
    "StepDistribution",
    "StopReason",
    "VerificationError",
    "VolumeViolation",
    "axiom_witness",
    "c_power",
    "cdf",
    "cdf_bivariate",
    "certify_df_axioms",
    "copula_volume",
    "cpower_trace",
    "d_increasing_check",
    "h_volume",
    "joint_cdf",
    "limit_is_zero",
    "partition_volume_sum",
    "pmf_table",
    "recursive_volume",
    "__version__",
]
