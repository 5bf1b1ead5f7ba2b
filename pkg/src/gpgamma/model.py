"""Generalized Poisson count model under the (a, b, c, k) parametrization.

The observed count X given a non-negative integer level k has pmf

    P(X = x | k) = lam1 (lam1 + x lam2)^(x-1) exp(-(lam1 + x lam2)) / x!

with lam1 = k b sqrt(m), lam2 = 1 - sqrt(m) and m = exp(a b + c); the
constants a, c are real and 0 < b < 1.  Mean and variance of X given k are
k b and k b / m.  At m = 1 the model is Poisson with mean k b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SupportError
from .special import log_gamma

__all__ = ["ModelParams", "derive_params", "gp_log_pmf", "gp_moments"]


@dataclass(frozen=True)
class ModelParams:
    """Validated model constants plus derived quantities.

    Build instances through :func:`derive_params`, which enforces
    0 < b < 1 and 0 < m < 4 (equivalently |lambda2| < 1).

    Attributes:
        m: exp(a*b + c), the dispersion scale.
        sqrt_m: square root of m.
        lambda2: 1 - sqrt(m).
        rate: b * sqrt(m), the exponential rate of the posterior weights.
        w: 1 + (1 - sqrt(m)) / rate; must be positive before posterior
            computations with x > 0.
    """

    a: float
    b: float
    c: float
    m: float
    sqrt_m: float
    lambda2: float
    rate: float
    w: float


def derive_params(a: float, b: float, c: float) -> ModelParams:
    """Validate (a, b, c) and populate all derived quantities."""
    for name, value in (("a", a), ("b", b), ("c", c)):
        if not math.isfinite(value):
            raise DomainError(f"parameter {name} must be finite, got {value!r}")
    if not 0.0 < b < 1.0:
        raise DomainError(f"b must lie in the open interval (0, 1), got b={b}")
    try:
        m = math.exp(a * b + c)
    except OverflowError:
        m = math.inf
    if not 0.0 < m < 4.0:
        raise DomainError(
            f"m = exp(a*b + c) = {m} violates the dispersion constraint "
            f"|lambda2| = |1 - sqrt(m)| < 1 (requires 0 < m < 4)"
        )
    sqrt_m = math.sqrt(m)
    rate = b * sqrt_m
    return ModelParams(
        a=float(a),
        b=float(b),
        c=float(c),
        m=m,
        sqrt_m=sqrt_m,
        lambda2=1.0 - sqrt_m,
        rate=rate,
        w=1.0 + (1.0 - sqrt_m) / rate,
    )


def gp_log_pmf(params: ModelParams, k: int, x: int) -> float:
    """Log-probability ln P(X = x | k), computed entirely in log space.

    ln P = ln lam1 + (x - 1) ln(lam1 + x lam2) - (lam1 + x lam2) - ln x!

    The degenerate level k = 0 is the lam1 -> 0 limit: a point mass at
    x = 0 (log-probability 0.0 there, -inf for x >= 1).

    Raises:
        SupportError: if lam1 + x*lam2 <= 0, which only happens in
            parameter regimes (w <= 0) where the posterior is undefined
            anyway; failing loudly beats returning a silent NaN.
    """
    if k < 0 or x < 0:
        raise DomainError(f"k and x must be non-negative integers, got k={k}, x={x}")
    if k == 0:
        return 0.0 if x == 0 else -math.inf
    lam1 = k * params.rate
    base = lam1 + x * params.lambda2
    if base <= 0.0:
        raise SupportError(
            f"pmf base lam1 + x*lambda2 = {base} is not positive at k={k}, x={x}; "
            f"the parametrization is invalid on this support"
        )
    return math.log(lam1) + (x - 1) * math.log(base) - base - log_gamma(x + 1.0)


def gp_moments(params: ModelParams, k: int) -> tuple[float, float]:
    """Mean and variance of X given k: (k*b, k*b/m)."""
    if k < 0:
        raise DomainError(f"k must be a non-negative integer, got k={k}")
    mean = k * params.b
    return mean, mean / params.m
