"""First-order bias and MSE theory for the two-parameter estimator family.

Writing u = 1 - 2*alpha, v = 1 - 2*beta, f = n/N and fpc = (1 - f)/n, the
Taylor expansion of the family around (Ybar, Xbar) gives, to first order,

    bias1 = fpc * v * (1 - alpha - beta - u*c) * cv_x^2 * Ybar
    mse1  = fpc * Ybar^2 * (cv_y^2 + cv_x^2 * u*v * (u*v - 2*c))

where c = r * cv_y / cv_x.  mse1 depends on (alpha, beta) only through the
product u*v, is minimized exactly on the hyperbola u*v = c, and the minimum
value is fpc * S_y^2 * (1 - r^2) regardless of where on the hyperbola the
parameters sit.  The pair solving u*v = c together with bias1 = 0 is the
first-order unbiased, minimum-MSE ("optimal") parameter choice; it is real
only for c <= 0 or c > 1/2 and blows up at c = 1/2.

Every other estimator in :mod:`rpratio.estimators` expands the same way
with its own linear coefficient w in place of u*v and its own quadratic
coefficient q, so a single pair (w, q) per estimator yields all the
first-order comparisons used here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateMseError,
    InvalidInputError,
    NonRealParametersError,
    PoleAtHalfError,
)
from .estimators import (
    EstimatorSpec,
    Product,
    Ratio,
    RatioProductRatio,
    Reddy,
    SahaiTransformed,
    SampleMean,
    SinghRatioProduct,
    SrivastavaPower,
    UnbiasedAOE,
)
from .population import SamplingDesign, SummaryStats

__all__ = [
    "Branch",
    "Baseline",
    "SurfaceKind",
    "AOESolution",
    "FirstOrderResult",
    "bias1_rpr",
    "mse1_rpr",
    "mse1_grad",
    "mse1_classical",
    "minimal_mse1",
    "biasfree_betas",
    "aoe_parameters",
    "aoe_bias1",
    "dominates",
    "relative_efficiency",
    "family_theory",
    "surface_grid",
]


class Branch(Enum):
    """Which sign of the alpha radical the optimal-parameter solver takes."""

    MINUS_MINUS = "minus-minus"
    PLUS_PLUS = "plus-plus"


class Baseline(Enum):
    """Classical estimator against which dominance is asked."""

    SAMPLE_MEAN = "mean"
    RATIO = "ratio"
    PRODUCT = "product"


class SurfaceKind(Enum):
    BIAS_FREE = "biasfree"
    AOE = "aoe"
    DOMINANCE = "region"


@dataclass(frozen=True)
class AOESolution:
    """Optimal parameter pair; NaN with is_real=False inside 0 < c < 1/2."""

    alpha_star: float
    beta_star: float
    branch: Branch
    is_real: bool


@dataclass(frozen=True)
class FirstOrderResult:
    bias1: float
    mse1: float


def bias1_rpr(alpha: float, beta: float, st: SummaryStats, d: SamplingDesign) -> float:
    """First-order bias of the family member at (alpha, beta)."""
    u = 1.0 - 2.0 * alpha
    v = 1.0 - 2.0 * beta
    return d.fpc_rate * v * (1.0 - alpha - beta - u * st.c) * st.cv_x**2 * st.mean_y


def mse1_rpr(alpha: float, beta: float, st: SummaryStats, d: SamplingDesign) -> float:
    """First-order MSE of the family member at (alpha, beta)."""
    w = (1.0 - 2.0 * alpha) * (1.0 - 2.0 * beta)
    return d.fpc_rate * st.mean_y**2 * (st.cv_y**2 + st.cv_x**2 * w * (w - 2.0 * st.c))


def mse1_grad(
    alpha: float, beta: float, st: SummaryStats, d: SamplingDesign
) -> tuple[float, float]:
    """Gradient of mse1_rpr in (alpha, beta):

        -4 * fpc * Ybar^2 * cv_x^2 * (u*v - c) * (v, u)

    with u = 1 - 2*alpha, v = 1 - 2*beta.  Zero exactly at the saddle
    (1/2, 1/2) and on the hyperbola u*v = c.
    """
    u = 1.0 - 2.0 * alpha
    v = 1.0 - 2.0 * beta
    k = -4.0 * d.fpc_rate * st.mean_y**2 * st.cv_x**2 * (u * v - st.c)
    return k * v, k * u


def _coefficients(spec: EstimatorSpec) -> tuple[float, float]:
    """Per-estimator expansion coefficients (w, q).

    Each estimator equals Ybar * (1 + e1) * (1 - w*e2 + q*e2^2 + ...) with
    e1, e2 the relative deviations of the two sample means, so
    bias1 = fpc * Ybar * cv_x^2 * (q - w*c) and mse1 shares one formula.
    """
    match spec:
        case SampleMean():
            return 0.0, 0.0
        case Ratio():
            return 1.0, 1.0
        case Product():
            return -1.0, 0.0
        case RatioProductRatio(alpha=a, beta=b):
            v = 1.0 - 2.0 * b
            return (1.0 - 2.0 * a) * v, (1.0 - a - b) * v
        case UnbiasedAOE(c=c):
            return c, c * c
        case SrivastavaPower(k=k):
            return -k, k * (k - 1.0) / 2.0
        case Reddy(k=k):
            return k, k * k
        case SahaiTransformed(k=k):
            return k, -k * (k - 1.0) / 2.0
        case SinghRatioProduct(k=k):
            return 2.0 * k - 1.0, k
        case _:
            raise InvalidInputError(f"unknown estimator spec {spec!r}")


def family_theory(
    spec: EstimatorSpec, st: SummaryStats, d: SamplingDesign
) -> FirstOrderResult:
    """First-order bias and MSE for any estimator spec."""
    w, q = _coefficients(spec)
    scale = d.fpc_rate * st.cv_x**2 * st.mean_y
    bias1 = scale * (q - w * st.c)
    mse1 = d.fpc_rate * st.mean_y**2 * (
        st.cv_y**2 + st.cv_x**2 * w * (w - 2.0 * st.c)
    )
    return FirstOrderResult(bias1=bias1, mse1=mse1)


def mse1_classical(
    spec: SampleMean | Ratio | Product, st: SummaryStats, d: SamplingDesign
) -> float:
    """First-order MSE of the three classical estimators."""
    base = d.fpc_rate * st.mean_y**2
    match spec:
        case SampleMean():
            return base * st.cv_y**2
        case Ratio():
            return base * (st.cv_y**2 + st.cv_x**2 * (1.0 - 2.0 * st.c))
        case Product():
            return base * (st.cv_y**2 + st.cv_x**2 * (1.0 + 2.0 * st.c))
        case _:
            raise InvalidInputError("expected SampleMean, Ratio or Product")


def minimal_mse1(st: SummaryStats, d: SamplingDesign) -> float:
    """fpc * S_y^2 * (1 - r^2), the value of mse1 anywhere on u*v = c."""
    return d.fpc_rate * st.var_y * (1.0 - st.r**2)


def biasfree_betas(alpha: float, c: float) -> tuple[float, float]:
    """Both beta roots that zero bias1 at a given alpha: the plane beta = 1/2
    and the ruled sheet beta = 1 - alpha - c + 2*alpha*c."""
    return 0.5, 1.0 - alpha - c + 2.0 * alpha * c


def aoe_parameters(
    c: float,
    branch: Branch = Branch.MINUS_MINUS,
    require_real: bool = False,
) -> AOESolution:
    """Solve jointly for zero first-order bias and minimal first-order MSE.

    The alpha radical is sqrt(c / (2c - 1)); ``branch`` picks its sign, and
    beta follows from the hyperbola constraint v = c/u so that
    (1 - 2*alpha)(1 - 2*beta) = c holds for every admissible c, positive or
    negative.  PLUS_PLUS returns the point reflection of MINUS_MINUS.

    Inside 0 < c < 1/2 the radicand is negative: the solution is flagged
    is_real=False (NaN parameters) unless ``require_real`` asks for an
    error.  At c = 1/2 exactly the radicand has a pole and PoleAtHalfError
    is always raised.
    """
    if c == 0.5:
        raise PoleAtHalfError("optimal parameters undefined at c = 1/2")
    if 0.0 < c < 0.5:
        if require_real:
            raise NonRealParametersError(
                f"optimal parameters are complex for c = {c!r} in (0, 1/2)"
            )
        return AOESolution(math.nan, math.nan, branch, False)
    if c == 0.0:
        # Degenerate hyperbola: the unique bias-free minimum is the center.
        return AOESolution(0.5, 0.5, branch, True)
    u = math.sqrt(c / (2.0 * c - 1.0))
    if branch is Branch.PLUS_PLUS:
        u = -u
    v = c / u
    return AOESolution((1.0 - u) / 2.0, (1.0 - v) / 2.0, branch, True)


def aoe_bias1(beta: float, c: float, st: SummaryStats, d: SamplingDesign) -> float:
    """First-order bias anywhere on the hyperbola u*v = c, as a function of
    which beta was chosen along it:

        fpc * cv_x^2 * Ybar * [c*(1 - 2c) + (1 - 2*beta)^2] / 2

    Vanishes exactly at beta_star, where (1 - 2*beta)^2 = c*(2c - 1).
    """
    v = 1.0 - 2.0 * beta
    return d.fpc_rate * st.cv_x**2 * st.mean_y * (c * (1.0 - 2.0 * c) + v * v) / 2.0


def dominates(over: Baseline, alpha: float, beta: float, c: float) -> bool:
    """Whether the family member at (alpha, beta) has strictly smaller
    first-order MSE than a classical baseline, for a population with moment
    ratio c.  Each predicate is the exact sign condition of the difference
    mse1(baseline) - mse1(alpha, beta):

        product:     (1 + g) * (c - g)     > 0
        ratio:       g * (c - 1 - g)       > 0
        sample mean: u*v * (2c - u*v)      > 0

    with g = 2*alpha*beta - alpha - beta = (u*v - 1)/2.
    """
    g = 2.0 * alpha * beta - alpha - beta
    match over:
        case Baseline.PRODUCT:
            return (1.0 + g) * (c - g) > 0.0
        case Baseline.RATIO:
            return g * (c - 1.0 - g) > 0.0
        case Baseline.SAMPLE_MEAN:
            w = (1.0 - 2.0 * alpha) * (1.0 - 2.0 * beta)
            return w * (2.0 * c - w) > 0.0
        case _:
            raise InvalidInputError(f"unknown baseline {over!r}")


def relative_efficiency(
    spec_num: EstimatorSpec,
    spec_den: EstimatorSpec,
    st: SummaryStats,
    d: SamplingDesign,
) -> float:
    """mse1(spec_num) / mse1(spec_den); > 1 means spec_den is the better one."""
    num = family_theory(spec_num, st, d).mse1
    den = family_theory(spec_den, st, d).mse1
    if den <= 0.0:
        raise DegenerateMseError(
            "denominator first-order MSE is zero (perfect correlation)"
        )
    return num / den


def _axis(bounds: tuple[float, float, float], what: str) -> list[float]:
    start, stop, step = (float(t) for t in bounds)
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise InvalidInputError(f"{what} bounds must be finite")
    if step <= 0.0 or stop < start:
        raise InvalidInputError(f"{what} needs stop >= start and step > 0")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + step * i for i in range(count)]


def surface_grid(
    kind: SurfaceKind,
    alpha_range: tuple[float, float, float],
    c_range: tuple[float, float, float],
    beta_range: tuple[float, float, float] | None = None,
) -> list[tuple]:
    """Tabulate one of the three parameter-space surfaces.

    BIAS_FREE emits, per (alpha, c) node, both beta roots of bias1 = 0 as
    rows (alpha, beta, c).  AOE emits the hyperbola point
    beta = (1 - c/(1 - 2*alpha)) / 2 per node, skipping the alpha = 1/2
    pole.  DOMINANCE walks (alpha, beta, c) nodes and appends an indicator
    that the family member beats all three classical baselines at once.
    """
    alphas = _axis(alpha_range, "alpha")
    cs = _axis(c_range, "c")
    rows: list[tuple] = []
    if kind is SurfaceKind.BIAS_FREE:
        for a in alphas:
            for c in cs:
                trivial, sheet = biasfree_betas(a, c)
                rows.append((a, trivial, c))
                rows.append((a, sheet, c))
    elif kind is SurfaceKind.AOE:
        for a in alphas:
            u = 1.0 - 2.0 * a
            if abs(u) < 1e-12:
                continue
            for c in cs:
                rows.append((a, (1.0 - c / u) / 2.0, c))
    elif kind is SurfaceKind.DOMINANCE:
        if beta_range is None:
            raise InvalidInputError("dominance region needs a beta range")
        betas = _axis(beta_range, "beta")
        for a in alphas:
            for b in betas:
                for c in cs:
                    flag = (
                        dominates(Baseline.SAMPLE_MEAN, a, b, c)
                        and dominates(Baseline.RATIO, a, b, c)
                        and dominates(Baseline.PRODUCT, a, b, c)
                    )
                    rows.append((a, b, c, int(flag)))
    else:
        raise InvalidInputError(f"unknown surface kind {kind!r}")
    return rows
