"""Synthetic bivariate populations with exact low-order moments.

The construction works backwards from the contract: whatever the base
draws look like, (1) Gram-Schmidt on two centered columns gives an exactly
orthonormal pair, so mixing them with weights (r, sqrt(1 - r^2)) sets the
sample correlation to r exactly, and (2) an affine map per column then
lands the sample mean and CV exactly.

The base shape is what decides positivity.  A symmetric base cannot
deliver a CV much above ~0.3 with all values positive (the standardized
minimum sits near mean - 3 sd), so the bases are drawn lognormal with
enough right skew that the standardized minimum stays above zero; the
column with the larger CV target gets the pure skewed direction and only
the looser column takes the mixture.  No repair or re-draw is attempted:
if either final column still touches zero the targets are declared
infeasible (large CVs combined with strongly negative r can do this).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleTargetsError, InvalidInputError
from .population import Population

__all__ = ["MomentTargets", "generate_population"]


@dataclass(frozen=True)
class MomentTargets:
    """Sample-moment targets: means, coefficients of variation, correlation."""

    size: int
    mean_y: float
    mean_x: float
    cv_y: float
    cv_x: float
    r: float

    def __post_init__(self):
        if self.size < 3:
            raise InvalidInputError(
                f"population size must be at least 3, got {self.size}"
            )
        if self.mean_y <= 0.0 or self.mean_x <= 0.0:
            raise InvalidInputError("means must be positive for positive-valued data")
        if self.cv_y <= 0.0 or self.cv_x <= 0.0:
            raise InvalidInputError("coefficients of variation must be positive")
        if not -1.0 < self.r < 1.0:
            raise InvalidInputError(f"correlation {self.r} outside (-1, 1)")

    @property
    def N(self) -> int:
        return self.size


def _lognormal_sigma(cv: float) -> float:
    # Base CV of 1.8x the target leaves headroom for the mixing step.
    return math.sqrt(math.log1p((1.8 * cv) ** 2))


def _unit_centered(column: np.ndarray) -> np.ndarray:
    centered = column - column.mean()
    norm = float(np.linalg.norm(centered))
    if norm == 0.0:
        raise InfeasibleTargetsError("degenerate base draw (constant column)")
    return centered / norm


def generate_population(targets: MomentTargets, seed: int) -> Population:
    """Deterministically generate a population meeting ``targets``.

    Sample means and CVs are exact to float rounding, the correlation
    likewise.  Raises InfeasibleTargetsError when the targets cannot be met
    with strictly positive values.
    """
    rng = np.random.default_rng(seed)
    hi_cv = max(targets.cv_x, targets.cv_y)
    lo_cv = min(targets.cv_x, targets.cv_y)
    base_hi = rng.lognormal(0.0, _lognormal_sigma(hi_cv), targets.size)
    base_lo = rng.lognormal(0.0, _lognormal_sigma(max(lo_cv, 0.05)), targets.size)

    e1 = _unit_centered(base_hi)
    g = base_lo - base_lo.mean()
    g = g - (g @ e1) * e1
    norm = float(np.linalg.norm(g))
    if norm == 0.0:
        raise InfeasibleTargetsError("degenerate base draw (collinear columns)")
    e2 = g / norm

    mix = targets.r * e1 + math.sqrt(1.0 - targets.r**2) * e2
    if targets.cv_x >= targets.cv_y:
        e_x, e_y = e1, mix
    else:
        e_x, e_y = mix, e1

    root = math.sqrt(targets.size - 1)
    x = targets.mean_x * (1.0 + targets.cv_x * root * e_x)
    y = targets.mean_y * (1.0 + targets.cv_y * root * e_y)
    if (x <= 0.0).any() or (y <= 0.0).any():
        raise InfeasibleTargetsError(
            "CV targets too large to keep all values positive at "
            f"r={targets.r} (min x={x.min():.4g}, min y={y.min():.4g})"
        )
    return Population(y=y, x=x)
