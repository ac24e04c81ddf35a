"""Zero-mean-curvature surface families in Lorentz-Minkowski space:
catalog evaluation through second-order jets, rotation rules between the
three graph equations, arctangent-lattice series decompositions, and the
codimension-2 expansion-scalar classification, all backed by machine-
checkable verification reports."""

from .catalog import (
    CATALOG_IDS,
    DilationSpec,
    FamilyParam,
    HeightField,
    dilate,
    get_field,
    limit_comparison,
    swap_variables,
)
from .codim2 import Codim2Class, Codim2Data, classify, immerse
from .decompositions import (
    DecompReport,
    chi_infinite_log_rhs,
    chi_infinite_rhs,
    finite_decomp_check,
    psi_infinite_rhs,
)
from .errors import ZmcForgeError
from .jets import Jet2, complex_atan, complex_atanh, constant, jet_apply, seed_x, seed_y
from .residuals import (
    causal_character_graph,
    fd_crosscheck,
    residual_bie,
    residual_mse,
    residual_zmc,
)
from .series import SeriesEval, branch_offset, er_closed, er_partial, er_regroup_finite
from .suites import SUITE_IDS, GridSpec, VerificationReport, run_suite
from .wick import (
    parity_profile,
    wick_mse_to_bie_even,
    wick_mse_to_bie_odd,
    wick_mse_to_zmc,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG_IDS", "DilationSpec", "FamilyParam", "HeightField", "dilate",
    "get_field", "limit_comparison", "swap_variables",
    "Codim2Class", "Codim2Data", "classify", "immerse",
    "DecompReport", "chi_infinite_log_rhs", "chi_infinite_rhs",
    "finite_decomp_check", "psi_infinite_rhs",
    "ZmcForgeError",
    "Jet2", "complex_atan", "complex_atanh", "constant", "jet_apply",
    "seed_x", "seed_y",
    "causal_character_graph", "fd_crosscheck", "residual_bie",
    "residual_mse", "residual_zmc",
    "SeriesEval", "branch_offset", "er_closed", "er_partial",
    "er_regroup_finite",
    "SUITE_IDS", "GridSpec", "VerificationReport", "run_suite",
    "parity_profile", "wick_mse_to_bie_even", "wick_mse_to_bie_odd",
    "wick_mse_to_zmc",
    "__version__",
]
