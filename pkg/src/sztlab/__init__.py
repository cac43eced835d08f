"""Exact additive combinatorics of finite rational sets, with a
verification harness for spectral sumset-growth inequalities.

Layers:

* :mod:`sztlab.sets`: exact sets, sumsets, convolutions, level sets;
* :mod:`sztlab.energies`: additive energies and correlation tensors;
* :mod:`sztlab.operators`: weighted convolution operators and spectra;
* :mod:`sztlab.szt`: tail profiles and smallness constants;
* :mod:`sztlab.families`: seeded structured set generators;
* :mod:`sztlab.harness`: inequality checks and sweep driver;
* :mod:`sztlab.cli`: the ``sztlab`` command.
"""

from .energies import (
    CorrelationTensor,
    correlation_tensor,
    energy_bruteforce,
    energy_fractional,
    energy_k,
    mixed_energy,
    weighted_corr,
)
from .errors import (
    BudgetError,
    ConfigError,
    ContainmentError,
    EmptySetError,
    FamilyError,
    MapDomainError,
    RatioGuardError,
    SztlabError,
)
from .families import FamilySpec, XorShift64Star, apply_convex_map, generate
from .harness import (
    SuiteConfig,
    check_convex_map_theorems,
    check_cor_convex_pm,
    check_dyadic_decomposition,
    check_lemma_e3,
    check_lemma_szt,
    check_lemma_szt1,
    check_thm_main,
    check_thm_main_diff,
    default_config,
    load_config,
    run_suite,
)
from .operators import (
    DenseOperator,
    SpectrumResult,
    WeightFunction,
    action_via_convolution,
    apply_action,
    build_operator,
    eigen_spectrum,
    singular_spectrum,
    verify_action_g_bound,
    verify_rank_one_lemma,
)
from .report import (
    InequalityReport,
    SuiteReport,
    evaluate_inequality,
    suite_from_json,
    suite_to_csv,
    suite_to_json,
)
from .sets import (
    FiniteRealSet,
    MultiplicityMap,
    Rational,
    as_rational,
    convolve_minus,
    convolve_plus,
    difference_set,
    is_convex,
    level_set,
    load_set_file,
    make_set,
    parse_set_text,
    product_set,
    save_set_file,
    sumset,
)
from .szt import (
    CEstimate,
    TailProfile,
    estimate_c,
    family_c,
    q_of,
    q_prime,
    tail_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CEstimate",
    "ConfigError",
    "ContainmentError",
    "CorrelationTensor",
    "DenseOperator",
    "EmptySetError",
    "FamilyError",
    "FamilySpec",
    "FiniteRealSet",
    "InequalityReport",
    "MapDomainError",
    "MultiplicityMap",
    "Rational",
    "RatioGuardError",
    "SpectrumResult",
    "SuiteConfig",
    "SuiteReport",
    "SztlabError",
    "TailProfile",
    "WeightFunction",
    "XorShift64Star",
    "action_via_convolution",
    "apply_action",
    "apply_convex_map",
    "as_rational",
    "build_operator",
    "check_convex_map_theorems",
    "check_cor_convex_pm",
    "check_dyadic_decomposition",
    "check_lemma_e3",
    "check_lemma_szt",
    "check_lemma_szt1",
    "check_thm_main",
    "check_thm_main_diff",
    "convolve_minus",
    "convolve_plus",
    "correlation_tensor",
    "default_config",
    "difference_set",
    "eigen_spectrum",
    "energy_bruteforce",
    "energy_fractional",
    "energy_k",
    "estimate_c",
    "evaluate_inequality",
    "family_c",
    "generate",
    "is_convex",
    "level_set",
    "load_config",
    "load_set_file",
    "make_set",
    "mixed_energy",
    "parse_set_text",
    "product_set",
    "q_of",
    "q_prime",
    "run_suite",
    "save_set_file",
    "singular_spectrum",
    "suite_from_json",
    "suite_to_csv",
    "suite_to_json",
    "sumset",
    "tail_profile",
    "verify_action_g_bound",
    "verify_rank_one_lemma",
    "weighted_corr",
]
