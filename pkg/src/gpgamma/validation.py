"""Distance metrics, identity cross-checks, and parameter-grid sweeps.

``compare`` quantifies how well a discretized gamma approximation tracks an
exact posterior table; the ``verify_*`` functions check the supporting
special-function identities numerically; ``sweep`` drives both over a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .approximation import (
    DiscretePmf,
    GammaApprox,
    discretize_gamma,
    inequality_check,
    moment_matched_gamma,
    theorem1_gamma,
)
from .errors import DomainError, NumericError, PrecisionError
from .model import ModelParams, derive_params
from .posterior import (
    PosteriorTable,
    denominator_lerch,
    exact_posterior,
    posterior_moments,
)
from .special import lerch_phi, lerch_phi_bernoulli, reg_lower_inc_gamma

__all__ = [
    "ComparisonReport",
    "SweepResult",
    "compare",
    "full_support_tv",
    "golden_key",
    "golden_lines",
    "load_golden",
    "sweep",
    "verify_bernoulli_expansion",
    "verify_lerch_denominator",
]

_KL_FLOOR = 1e-300


@dataclass(frozen=True)
class ComparisonReport:
    """Distance metrics and moment diagnostics for one (params, x, kind).

    ``tv`` is half the L1 distance and ``kl`` the divergence from the exact
    posterior to the approximation, both over the common support window with
    the approximation renormalized there.  ``dropped_term_ratio`` is the
    second-to-first term ratio of the Lerch form of the normalizer, the
    sqrt(m) ~ 1 diagnostic; ``raw_total`` is the approximation's window mass
    before renormalization.
    """

    a: float
    b: float
    c: float
    m: float
    x: int
    kind: str
    tv: float
    kl: float
    sup_abs: float
    mean_exact: float
    var_exact: float
    mean_approx: float
    var_approx: float
    dropped_term_ratio: float
    inequality_holds: bool
    raw_total: float


@dataclass(frozen=True)
class SweepResult:
    """One sweep entry: either a completed report or a recorded error."""

    index: int
    a: float
    b: float
    c: float
    x: int
    kind: str | None
    report: ComparisonReport | None
    error: str | None


def _window_moments(k_min: int, probs: np.ndarray) -> tuple[float, float]:
    ks = np.arange(k_min, k_min + len(probs))
    mu = float(np.dot(ks, probs))
    return mu, float(np.dot(probs, (ks - mu) ** 2))


def _dropped_term_ratio(params: ModelParams, x: int) -> float:
    # Ratio of the two Lerch terms in the normalizer; the coefficient
    # (w - 1) * x makes it vanish identically at x = 0 and m = 1.
    if x == 0 or params.w == 1.0:
        return 0.0
    a = params.w * x
    z = math.exp(-params.rate)
    first = lerch_phi(z, -x, a)
    second = (params.w - 1.0) * x * lerch_phi(z, -(x - 1), a)
    return second / first


def compare(
    exact: PosteriorTable, approx: DiscretePmf, epsilon_ineq: float = 0.01
) -> ComparisonReport:
    """Compare an exact posterior with a window-renormalized approximation.

    Both pmfs must live on the same window k = x .. k_max and the
    approximation must already be renormalized over it; anything else is a
    usage error.
    """
    if not approx.renormalized:
        raise ValueError("compare needs the approximation renormalized over the window")
    if approx.k_min != exact.k_min or len(approx.probs) != len(exact.probs):
        raise ValueError(
            f"misaligned supports: exact k={exact.k_min}..{exact.k_max}, "
            f"approx k={approx.k_min}..{approx.k_min + len(approx.probs) - 1}"
        )
    p = exact.probs
    q = approx.probs
    tv = 0.5 * float(np.abs(p - q).sum())
    mask = p > 0.0  # zero-mass entries contribute 0 to the divergence
    kl = float(np.sum(p[mask] * np.log(p[mask] / np.maximum(q[mask], _KL_FLOOR))))
    sup_abs = float(np.max(np.abs(p - q)))
    mean_exact, var_exact = posterior_moments(exact)
    mean_approx, var_approx = _window_moments(approx.k_min, q)
    params = exact.params
    x = exact.x
    holds = inequality_check(params, x, epsilon_ineq).holds if x >= 1 else True
    return ComparisonReport(
        a=params.a,
        b=params.b,
        c=params.c,
        m=params.m,
        x=x,
        kind=approx.kind or "",
        tv=tv,
        kl=kl,
        sup_abs=sup_abs,
        mean_exact=mean_exact,
        var_exact=var_exact,
        mean_approx=mean_approx,
        var_approx=var_approx,
        dropped_term_ratio=_dropped_term_ratio(params, x),
        inequality_holds=holds,
        raw_total=approx.raw_total,
    )


def full_support_tv(exact: PosteriorTable, g: GammaApprox) -> float:
    """Total variation between the posterior and the discretized gamma on all k >= 0.

    The discretized gamma is taken as a genuine pmf on the non-negative
    integers: its mass below and above the table's window counts as
    discrepancy instead of being renormalized away.
    """
    disc = discretize_gamma(g, exact.k_min, exact.k_max, renormalize=False)
    below = reg_lower_inc_gamma(g.shape, max(exact.k_min - 0.5, 0.0) / g.scale)
    above = 1.0 - reg_lower_inc_gamma(g.shape, (exact.k_max + 0.5) / g.scale)
    return 0.5 * (float(np.abs(exact.probs - disc.probs).sum()) + below + above)


def _direct_denominator(params: ModelParams, x: int) -> float:
    # Plain summation of j (j+g)^(x-1) e^(-rate j); independent of the
    # Lerch evaluation path so the two sides cross-check each other.
    g = (params.w - 1.0) * x
    rate = params.rate
    peak = (x + 1.0) / rate
    total = 0.0
    j = x
    while True:
        term = j * (j + g) ** (x - 1) * math.exp(-rate * j)
        total += term
        j += 1
        if j > peak and term < total * 1e-18:
            return total
        if j - x >= 10**7:
            raise NumericError(f"direct normalizer did not settle at x={x}")


def verify_lerch_denominator(params: ModelParams, x: int) -> float:
    """Relative gap between the Lerch-form normalizer and the direct series."""
    if x < 1:
        raise DomainError(f"the Lerch form needs x >= 1, got x={x}")
    direct = _direct_denominator(params, x)
    via_lerch = denominator_lerch(params, x)
    return abs(via_lerch - direct) / direct


def verify_bernoulli_expansion(params: ModelParams, x: int, terms: int) -> float:
    """Relative deviation of the Bernoulli expansion from the Lerch series.

    Evaluates the expansion of Phi(z, -x, w*x) at z = exp(-rate) truncated
    after ``terms`` correction terms and returns its relative distance from
    the directly summed transcendent.  The deviation shrinks as ``terms``
    grows, fastest when the rate is small.
    """
    if x < 1 or x > 20:
        raise DomainError(f"expansion check supports 1 <= x <= 20, got x={x}")
    if params.w <= 0.0:
        raise DomainError(f"expansion check needs w > 0, got w={params.w}")
    z = math.exp(-params.rate)
    a = params.w * x
    approx = lerch_phi_bernoulli(z, x, a, terms)
    # tight reference so the reported gap is the expansion's, not the series'
    reference = lerch_phi(z, -x, a, eps=1e-14)
    return abs(approx - reference) / abs(reference)


def sweep(
    grid: Sequence[tuple[float, float, float, int]],
    eps_tail: float = 1e-10,
    epsilon_ineq: float = 0.01,
) -> list[SweepResult]:
    """Run both approximation kinds over (a, b, c, x) grid points.

    Produces two entries per point in input order.  Per-point failures are
    recorded in the result stream instead of aborting the sweep.
    """
    results: list[SweepResult] = []
    for index, (a, b, c, x) in enumerate(grid):
        try:
            params = derive_params(a, b, c)
            table = exact_posterior(params, x, eps_tail)
            mu, var = posterior_moments(table)
        except (DomainError, PrecisionError, NumericError) as exc:
            results.append(
                SweepResult(index, a, b, c, x, kind=None, report=None, error=str(exc))
            )
            continue
        for kind in ("theorem1", "moment_matched"):
            try:
                g = (
                    theorem1_gamma(params, x)
                    if kind == "theorem1"
                    else moment_matched_gamma(mu, var)
                )
                disc = discretize_gamma(g, table.k_min, table.k_max, renormalize=True)
                report = compare(table, disc, epsilon_ineq)
                results.append(
                    SweepResult(index, a, b, c, x, kind, report, error=None)
                )
            except (DomainError, PrecisionError, NumericError) as exc:
                results.append(
                    SweepResult(index, a, b, c, x, kind, report=None, error=str(exc))
                )
    return results


# Golden fixtures: plain text, one record per line,
#   a,b,c,x,kind,metric,value
# with numbers rendered to 12 significant digits.

_GOLDEN_METRICS = ("tv", "kl", "sup_abs")


def _g12(value: float) -> str:
    return format(value, ".12g")


def golden_key(
    a: float, b: float, c: float, x: int, kind: str, metric: str
) -> tuple[str, str, str, str, str, str]:
    """Canonical lookup key for one golden record."""
    return (_g12(a), _g12(b), _g12(c), str(x), kind, metric)


def golden_lines(reports: Iterable[ComparisonReport]) -> list[str]:
    """Render the distance metrics of each report as golden-fixture lines."""
    lines = []
    for rep in reports:
        for metric in _GOLDEN_METRICS:
            key = golden_key(rep.a, rep.b, rep.c, rep.x, rep.kind, metric)
            lines.append(",".join([*key, _g12(getattr(rep, metric))]))
    return lines


def load_golden(path) -> dict[tuple[str, str, str, str, str, str], float]:
    """Parse a golden-fixture file into a {key: value} mapping."""
    table = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) != 7:
                raise ValueError(f"malformed golden record: {line!r}")
            table[tuple(fields[:6])] = float(fields[6])
    return table
