"""Point estimators of a finite population mean using an auxiliary variable.

Every estimator here is a scalar function of the same three numbers: the
sample means ``ybar`` and ``xbar`` and the known population mean ``Xbar``
of the auxiliary variable.  The central object is the two-parameter family

    t(alpha, beta) = alpha * B * ybar + (1 - alpha) * ybar / B,

    B = ((1 - beta) * xbar + beta * Xbar) / (beta * xbar + (1 - beta) * Xbar),

which interpolates between the classical ratio estimator
``ybar * Xbar / xbar`` at (0, 0) or (1, 1), the product estimator
``ybar * xbar / Xbar`` at (1, 0) or (0, 1), and collapses to the plain
sample mean on the whole line beta = 1/2.  The family is invariant under
the point reflection (alpha, beta) -> (1 - alpha, 1 - beta).

A handful of one-parameter competitors from the same literature are
included so they can run side by side in the simulation harness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InvalidInputError, SingularDenominatorError

__all__ = [
    "SampleSummary",
    "SampleMean",
    "Ratio",
    "Product",
    "RatioProductRatio",
    "UnbiasedAOE",
    "SrivastavaPower",
    "Reddy",
    "SahaiTransformed",
    "SinghRatioProduct",
    "EstimatorSpec",
    "estimate",
    "symmetry_partner",
    "estimator_token",
    "parse_estimator",
]


@dataclass(frozen=True)
class SampleSummary:
    """The three numbers every estimator consumes."""

    ybar: float
    xbar: float
    Xbar: float

    def __post_init__(self):
        for name in ("ybar", "xbar", "Xbar"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if self.Xbar == 0.0:
            raise InvalidInputError("population auxiliary mean Xbar must be nonzero")


@dataclass(frozen=True)
class SampleMean:
    """ybar, ignoring the auxiliary variable."""


@dataclass(frozen=True)
class Ratio:
    """ybar * Xbar / xbar."""


@dataclass(frozen=True)
class Product:
    """ybar * xbar / Xbar."""


@dataclass(frozen=True)
class RatioProductRatio:
    """The two-parameter family t(alpha, beta) described in the module docstring."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class UnbiasedAOE:
    """Closed form of the family member sitting at the optimal parameter pair
    for a population whose moment ratio equals ``c``:

        [2(c+1)Xbar^2 - 2(c-1)xbar^2 + (2c^2-c-1)(Xbar-xbar)^2]
        / [4 Xbar xbar - (2c^2-c-1)(Xbar-xbar)^2] * ybar

    First-order unbiased, and attains the minimal first-order MSE, when
    ``c`` matches the population value.
    """

    c: float


@dataclass(frozen=True)
class SrivastavaPower:
    """ybar * (xbar / Xbar) ** k."""

    k: float


@dataclass(frozen=True)
class Reddy:
    """ybar * Xbar / (Xbar + k * (xbar - Xbar))."""

    k: float


@dataclass(frozen=True)
class SahaiTransformed:
    """ybar * (2 - (xbar / Xbar) ** k)."""

    k: float


@dataclass(frozen=True)
class SinghRatioProduct:
    """ybar * (k * Xbar / xbar + (1 - k) * xbar / Xbar)."""

    k: float


EstimatorSpec = Union[
    SampleMean,
    Ratio,
    Product,
    RatioProductRatio,
    UnbiasedAOE,
    SrivastavaPower,
    Reddy,
    SahaiTransformed,
    SinghRatioProduct,
]


def _nonzero(value: float, what: str) -> float:
    if value == 0.0:
        raise SingularDenominatorError(f"{what} is zero", denominator=value)
    return value


def _power(base: float, k: float) -> float:
    # math.pow raises for 0**negative and for negative base with fractional
    # exponent; both mean the transform has left its domain for this draw.
    try:
        return math.pow(base, k)
    except (ValueError, ZeroDivisionError):
        raise SingularDenominatorError(
            f"power transform undefined for base {base!r} and exponent {k!r}",
            denominator=base,
        ) from None


def estimate(spec: EstimatorSpec, s: SampleSummary) -> float:
    """Evaluate an estimator on one sample summary.

    Raises SingularDenominatorError when a denominator of the requested
    estimator vanishes on this draw.
    """
    yb, xb, Xb = s.ybar, s.xbar, s.Xbar
    match spec:
        case SampleMean():
            return yb
        case Ratio():
            return yb * Xb / _nonzero(xb, "sample auxiliary mean xbar")
        case Product():
            return yb * xb / Xb
        case RatioProductRatio(alpha=a, beta=b):
            d1 = _nonzero(b * xb + (1.0 - b) * Xb, "beta*xbar + (1-beta)*Xbar")
            d2 = _nonzero((1.0 - b) * xb + b * Xb, "(1-beta)*xbar + beta*Xbar")
            bracket = d2 / d1
            return a * bracket * yb + (1.0 - a) * yb / bracket
        case UnbiasedAOE(c=c):
            t = 2.0 * c * c - c - 1.0
            gap = Xb - xb
            den = _nonzero(4.0 * Xb * xb - t * gap * gap, "closed-form denominator")
            num = 2.0 * (c + 1.0) * Xb * Xb - 2.0 * (c - 1.0) * xb * xb + t * gap * gap
            return num / den * yb
        case SrivastavaPower(k=k):
            return yb * _power(xb / Xb, k)
        case Reddy(k=k):
            return yb * Xb / _nonzero(Xb + k * (xb - Xb), "Xbar + k*(xbar - Xbar)")
        case SahaiTransformed(k=k):
            return yb * (2.0 - _power(xb / Xb, k))
        case SinghRatioProduct(k=k):
            if k == 0.0:
                return yb * xb / Xb
            return yb * (k * Xb / _nonzero(xb, "sample auxiliary mean xbar") + (1.0 - k) * xb / Xb)
        case _:
            raise InvalidInputError(f"unknown estimator spec {spec!r}")


def symmetry_partner(alpha: float, beta: float) -> tuple[float, float]:
    """The point-reflected parameter pair giving the identical estimator."""
    return 1.0 - alpha, 1.0 - beta


def _fmt(value: float) -> str:
    return repr(float(value))


def estimator_token(spec: EstimatorSpec) -> str:
    """Canonical command-line token for a spec; inverse of parse_estimator."""
    match spec:
        case SampleMean():
            return "mean"
        case Ratio():
            return "ratio"
        case Product():
            return "product"
        case RatioProductRatio(alpha=a, beta=b):
            return f"rpr:{_fmt(a)},{_fmt(b)}"
        case UnbiasedAOE(c=c):
            return f"aoe:{_fmt(c)}"
        case SrivastavaPower(k=k):
            return f"srivastava:{_fmt(k)}"
        case Reddy(k=k):
            return f"reddy:{_fmt(k)}"
        case SahaiTransformed(k=k):
            return f"sahai:{_fmt(k)}"
        case SinghRatioProduct(k=k):
            return f"singh:{_fmt(k)}"
        case _:
            raise InvalidInputError(f"unknown estimator spec {spec!r}")


_TOKEN_FORMS = (
    "mean",
    "ratio",
    "product",
    "rpr:<alpha>,<beta>",
    "aoe:<c>",
    "srivastava:<k>",
    "reddy:<k>",
    "sahai:<k>",
    "singh:<k>",
)


def parse_estimator(token: str) -> EstimatorSpec:
    """Parse a command-line estimator token such as ``rpr:-0.3349,0.3176``."""
    text = token.strip()
    name, sep, arg = text.partition(":")
    try:
        if not sep:
            match name:
                case "mean":
                    return SampleMean()
                case "ratio":
                    return Ratio()
                case "product":
                    return Product()
        else:
            match name:
                case "rpr":
                    alpha_text, _, beta_text = arg.partition(",")
                    return RatioProductRatio(float(alpha_text), float(beta_text))
                case "aoe":
                    return UnbiasedAOE(float(arg))
                case "srivastava":
                    return SrivastavaPower(float(arg))
                case "reddy":
                    return Reddy(float(arg))
                case "sahai":
                    return SahaiTransformed(float(arg))
                case "singh":
                    return SinghRatioProduct(float(arg))
    except ValueError:
        raise InvalidInputError(
            f"bad numeric argument in estimator token {token!r}"
        ) from None
    raise InvalidInputError(
        f"unknown estimator token {token!r}; valid forms: {', '.join(_TOKEN_FORMS)}"
    )
