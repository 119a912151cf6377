"""critpair: zeros and critical points of random polynomials.

A degree-n polynomial with random zeros pairs each zero with a critical
point at distance ~ 1/n, an order of magnitude closer than the ~ 1/sqrt(n)
spacing between zeros.  This package localizes those critical points,
certifies them by winding counts, and measures the fluctuation laws of the
pairing across i.i.d., Weyl, and characteristic-polynomial ensembles.
"""

from .cdf_table import (
    RadialCdfTable,
    gaussian_table,
    load_table_csv,
    save_table_csv,
    table_from_function,
    uniform_disk_table,
)
from .config import ExperimentConfig, build_config, load_config_file
from .ensembles import (
    EnsembleSpec,
    ginibre_zeros_from_matrix,
    sample_ginibre_zeros,
    sample_iid_zero_poly,
    sample_weyl_poly,
    weyl_zeros,
)
from .errors import (
    BadCdfTable,
    ConfigError,
    ConstantPoly,
    ContourTooClose,
    CritpairError,
    DegreeTooLarge,
    DuplicateZeros,
    EmptySample,
    LeftTrustRegion,
    LengthMismatch,
    NoConvergence,
    NonIntegerWinding,
    NotConverged,
    OutOfRange,
    PoleHit,
    ZeroDensity,
    ZeroTransform,
)
from .experiments import (
    run_clt_experiment,
    run_conjecture_experiment,
    run_cst_check,
    run_pairing_experiment,
)
from .pairing import (
    PairingRecord,
    chi_atoms,
    clt_statistic,
    fill_d_stats,
    nu_atoms,
    pair_nearest,
    predicted_critical,
    standardized_statistic,
)
from .poly import (
    CoeffFormPoly,
    RootFormPoly,
    differentiate_coeffs,
    expand_from_roots,
    horner_eval,
    log_derivative,
)
from .rng import SeededRng, mix64, trial_seed
from .rootfind import (
    RootFindReport,
    aberth_roots_coeffs,
    companion_oracle_roots,
    convex_hull_contains,
    count_critical_in_disk,
    critical_points_all,
    eigen_qr,
    newton_local_critical,
)
from .stats import (
    GaussianFit,
    coverage_miss_rate,
    disk_uniformity,
    fit_complex_gaussian,
    ks_distance,
    nearest_zero_law,
    robust_component_variances,
    robust_corr,
    standard_normal_cdf,
)
from .transforms import (
    cst_gaussian,
    cst_monte_carlo,
    cst_radial,
    cst_uniform_disk,
    empirical_cst,
    log_lipschitz_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "BadCdfTable",
    "CoeffFormPoly",
    "ConfigError",
    "ConstantPoly",
    "ContourTooClose",
    "CritpairError",
    "DegreeTooLarge",
    "DuplicateZeros",
    "EmptySample",
    "EnsembleSpec",
    "ExperimentConfig",
    "GaussianFit",
    "LeftTrustRegion",
    "LengthMismatch",
    "NoConvergence",
    "NonIntegerWinding",
    "NotConverged",
    "OutOfRange",
    "PairingRecord",
    "PoleHit",
    "RadialCdfTable",
    "RootFindReport",
    "RootFormPoly",
    "SeededRng",
    "ZeroDensity",
    "ZeroTransform",
    "aberth_roots_coeffs",
    "build_config",
    "chi_atoms",
    "clt_statistic",
    "companion_oracle_roots",
    "convex_hull_contains",
    "count_critical_in_disk",
    "coverage_miss_rate",
    "critical_points_all",
    "cst_gaussian",
    "cst_monte_carlo",
    "cst_radial",
    "cst_uniform_disk",
    "differentiate_coeffs",
    "disk_uniformity",
    "eigen_qr",
    "empirical_cst",
    "expand_from_roots",
    "fill_d_stats",
    "fit_complex_gaussian",
    "gaussian_table",
    "ginibre_zeros_from_matrix",
    "horner_eval",
    "ks_distance",
    "load_config_file",
    "load_table_csv",
    "log_derivative",
    "log_lipschitz_ratio",
    "mix64",
    "nearest_zero_law",
    "newton_local_critical",
    "nu_atoms",
    "pair_nearest",
    "predicted_critical",
    "robust_component_variances",
    "robust_corr",
    "run_clt_experiment",
    "run_conjecture_experiment",
    "run_cst_check",
    "run_pairing_experiment",
    "sample_ginibre_zeros",
    "sample_iid_zero_poly",
    "sample_weyl_poly",
    "save_table_csv",
    "standard_normal_cdf",
    "standardized_statistic",
    "table_from_function",
    "trial_seed",
    "uniform_disk_table",
    "weyl_zeros",
]
