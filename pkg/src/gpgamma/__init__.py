"""Exact Bayesian posterior of the Generalized Poisson count level k and
its gamma approximations.

The package splits into a scalar special-function kernel (:mod:`~gpgamma.special`),
the count model (:mod:`~gpgamma.model`), the exact posterior engine
(:mod:`~gpgamma.posterior`), the gamma approximations
(:mod:`~gpgamma.approximation`) and the comparison/verification layer
(:mod:`~gpgamma.validation`).  A CLI front end lives in :mod:`~gpgamma.cli`.
"""

from .approximation import (
    DiscretePmf,
    GammaApprox,
    InequalityResult,
    discretize_gamma,
    inequality_check,
    moment_matched_gamma,
    theorem1_gamma,
)
from .errors import (
    DomainError,
    NumericError,
    PrecisionError,
    SupportError,
    UnsupportedOrderError,
)
from .model import ModelParams, derive_params, gp_log_pmf, gp_moments
from .posterior import (
    PosteriorTable,
    denominator_lerch,
    exact_posterior,
    posterior_moments,
)
from .validation import (
    ComparisonReport,
    SweepResult,
    compare,
    full_support_tv,
    sweep,
    verify_bernoulli_expansion,
    verify_lerch_denominator,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "DiscretePmf",
    "DomainError",
    "GammaApprox",
    "InequalityResult",
    "ModelParams",
    "NumericError",
    "PosteriorTable",
    "PrecisionError",
    "SupportError",
    "SweepResult",
    "UnsupportedOrderError",
    "compare",
    "denominator_lerch",
    "derive_params",
    "discretize_gamma",
    "exact_posterior",
    "full_support_tv",
    "gp_log_pmf",
    "gp_moments",
    "inequality_check",
    "moment_matched_gamma",
    "posterior_moments",
    "sweep",
    "theorem1_gamma",
    "verify_bernoulli_expansion",
    "verify_lerch_denominator",
]
