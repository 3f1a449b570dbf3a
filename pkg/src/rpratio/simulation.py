"""Deterministic Monte Carlo comparison of estimators plus an exact oracle.

run_simulation draws SRSWOR replications with one PRNG stream per
replication, so the output is a pure function of (population, config) no
matter how the replications are scheduled.  exhaustive_oracle trades
randomness for enumeration: it walks every one of the C(N, n) subsets and
returns exact design moments, which is what the Monte Carlo results are
tested against on small populations.
"""
from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidDesignError,
    InvalidInputError,
    SingularDenominatorError,
    TooLargeError,
)
from .estimators import (
    EstimatorSpec,
    Product,
    Ratio,
    SampleMean,
    SampleSummary,
    estimate,
    estimator_token,
)
from .population import Population, make_design
from .sampling import confidence_interval, quartiles, srswor

__all__ = [
    "SimConfig",
    "EstimatorReport",
    "RankingTable",
    "SimResult",
    "ExactMoments",
    "run_simulation",
    "exhaustive_oracle",
    "write_estimates_csv",
]

PRNG_NAME = "splitmix64"
_ENUMERATION_BUDGET = 1_000_000


@dataclass(frozen=True)
class SimConfig:
    reps: int
    n: int
    seed: int
    confidence: float = 0.90
    estimators: tuple[EstimatorSpec, ...] = (SampleMean(), Ratio(), Product())

    def __post_init__(self):
        if self.reps < 1:
            raise InvalidInputError(f"reps must be at least 1, got {self.reps}")
        if not self.estimators:
            raise InvalidInputError("estimator list must not be empty")
        labels = [estimator_token(s) for s in self.estimators]
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"duplicate estimators in {labels}")


@dataclass(frozen=True)
class EstimatorReport:
    """Aggregates over the non-singular replications of one estimator.

    coverage, neg_bias_rate and pos_bias_rate partition those replications
    by the fixed-width interval around the true mean.  Moment-shape fields
    are None when they are undefined (no spread, or no valid draws)."""

    label: str
    coverage: float
    neg_bias_rate: float
    pos_bias_rate: float
    q1: float | None
    median: float | None
    q3: float | None
    mse_empirical: float | None
    re_vs_sample_mean: float | None
    skewness: float | None
    kurtosis: float | None
    singular_count: int


@dataclass(frozen=True)
class RankingTable:
    """How often each closeness ordering (best first) occurred.

    Orders are tuples of estimator labels; ties in |estimate - Ybar| keep
    the configured estimator order.  Replications where any estimator was
    singular are excluded and counted instead."""

    counts: dict[tuple[str, ...], int]
    excluded_draws: int


@dataclass(frozen=True)
class SimResult:
    reports: tuple[EstimatorReport, ...]
    ranking: RankingTable
    meta: dict = field(default_factory=dict)
    # Volatile by nature, so kept out of meta: the serialized report must be
    # byte-identical across reruns and thread counts.
    wall_time_s: float = 0.0


@dataclass(frozen=True)
class ExactMoments:
    expectation: float
    bias: float
    mse: float


def _shape(devs: np.ndarray) -> tuple[float | None, float | None]:
    m2 = float(np.mean(devs * devs))
    if m2 == 0.0:
        return None, None
    m3 = float(np.mean(devs**3))
    m4 = float(np.mean(devs**4))
    return m3 / m2**1.5, m4 / (m2 * m2)


def run_simulation(
    pop: Population,
    cfg: SimConfig,
    threads: int = 1,
    dump_path=None,
) -> SimResult:
    """Compare the configured estimators over cfg.reps SRSWOR replications.

    Per replication r the indices come from stream r of the seeded
    generator; every estimator sees the same draw.  The plain sample mean
    is always evaluated internally as the efficiency baseline, whether or
    not it appears in cfg.estimators.  With dump_path given, one CSV row
    per (replication, estimator) is written.
    """
    if threads < 1:
        raise InvalidInputError(f"threads must be at least 1, got {threads}")
    started = time.perf_counter()
    N = pop.size
    make_design(cfg.n, N)
    # Moments are computed directly rather than through summarize() so that
    # degenerate populations (constant y) still simulate; the interval width
    # is then simply zero.
    true_mean = float(pop.y.mean())
    mean_x = float(pop.x.mean())
    dy = pop.y - true_mean
    sd_y = math.sqrt(float(dy @ dy) / (N - 1))
    ci = confidence_interval(true_mean, sd_y, cfg.n, N, cfg.confidence)
    half_width = ci.half_width

    specs = cfg.estimators
    labels = [estimator_token(s) for s in specs]
    k = len(specs)
    reps = cfg.reps
    est = np.full((reps, k), np.nan)
    ok = np.zeros((reps, k), dtype=bool)
    base = np.empty(reps)

    def fill(lo: int, hi: int) -> None:
        for rep in range(lo, hi):
            idx = srswor(N, cfg.n, cfg.seed, stream=rep)
            ybar = float(pop.y[idx].mean())
            xbar = float(pop.x[idx].mean())
            s = SampleSummary(ybar, xbar, mean_x)
            base[rep] = ybar
            for j, spec in enumerate(specs):
                try:
                    est[rep, j] = estimate(spec, s)
                    ok[rep, j] = True
                except SingularDenominatorError:
                    pass

    if threads == 1:
        fill(0, reps)
    else:
        # Replications write disjoint rows, so chunks can run concurrently
        # and the merged arrays are identical for every schedule.
        chunk = math.ceil(reps / threads)
        bounds = [(lo, min(lo + chunk, reps)) for lo in range(0, reps, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda be: fill(*be), bounds))

    base_mse = float(np.mean((base - true_mean) ** 2))

    reports = []
    for j, label in enumerate(labels):
        vals = est[ok[:, j], j]
        singular = reps - int(ok[:, j].sum())
        if vals.size == 0:
            reports.append(
                EstimatorReport(
                    label=label, coverage=0.0, neg_bias_rate=0.0,
                    pos_bias_rate=0.0, q1=None, median=None, q3=None,
                    mse_empirical=None, re_vs_sample_mean=None,
                    skewness=None, kurtosis=None, singular_count=singular,
                )
            )
            continue
        devs = vals - true_mean
        coverage = float(np.mean(np.abs(devs) <= half_width))
        neg = float(np.mean(vals < true_mean - half_width))
        pos = float(np.mean(vals > true_mean + half_width))
        q1, med, q3 = quartiles(vals)
        mse = float(np.mean(devs * devs))
        re = base_mse / mse if mse > 0.0 else None
        skew, kurt = _shape(devs - devs.mean())
        reports.append(
            EstimatorReport(
                label=label, coverage=coverage, neg_bias_rate=neg,
                pos_bias_rate=pos, q1=q1, median=med, q3=q3,
                mse_empirical=mse, re_vs_sample_mean=re,
                skewness=skew, kurtosis=kurt, singular_count=singular,
            )
        )

    clean = ok.all(axis=1)
    counter: Counter = Counter()
    devs_all = np.abs(est - true_mean)
    order = np.argsort(devs_all, axis=1, kind="stable")
    for rep in np.flatnonzero(clean):
        counter[tuple(labels[j] for j in order[rep])] += 1
    ranking = RankingTable(
        counts=dict(counter), excluded_draws=reps - int(clean.sum())
    )

    meta = {
        "prng": PRNG_NAME,
        "seed": cfg.seed,
        "reps": reps,
        "n": cfg.n,
        "population_size": N,
        "confidence": cfg.confidence,
        "half_width": half_width,
        "true_mean_y": true_mean,
        "estimators": labels,
    }
    if dump_path is not None:
        write_estimates_csv(dump_path, labels, est, ok, true_mean, half_width)
    return SimResult(
        reports=tuple(reports),
        ranking=ranking,
        meta=meta,
        wall_time_s=time.perf_counter() - started,
    )


def write_estimates_csv(path, labels, est, ok, true_mean, half_width) -> None:
    """One row per (replication, estimator); singular draws carry nan."""
    with open(path, "w", newline="") as fh:
        fh.write("rep,estimator,estimate,covered\n")
        for rep in range(est.shape[0]):
            for j, label in enumerate(labels):
                if ok[rep, j]:
                    value = float(est[rep, j])
                    covered = int(abs(value - true_mean) <= half_width)
                    fh.write(f"{rep},{label},{value!r},{covered}\n")
                else:
                    fh.write(f"{rep},{label},nan,0\n")


def exhaustive_oracle(pop: Population, n: int, spec: EstimatorSpec) -> ExactMoments:
    """Exact design expectation, bias and MSE by enumerating all C(N, n)
    subsets with equal weight.  Refuses budgets beyond 10^6 subsets."""
    N = pop.size
    if not 1 <= n < N:
        raise InvalidDesignError(f"need 1 <= n < N, got n={n}, N={N}")
    total = math.comb(N, n)
    if total > _ENUMERATION_BUDGET:
        raise TooLargeError(
            f"C({N}, {n}) = {total} subsets exceeds the {_ENUMERATION_BUDGET} budget"
        )
    y = pop.y.tolist()
    x = pop.x.tolist()
    Xbar = float(pop.x.mean())
    Ybar = float(pop.y.mean())
    values = []
    for subset in itertools.combinations(range(N), n):
        ybar = sum(y[i] for i in subset) / n
        xbar = sum(x[i] for i in subset) / n
        values.append(estimate(spec, SampleSummary(ybar, xbar, Xbar)))
    expectation = math.fsum(values) / total
    mse = math.fsum((v - Ybar) ** 2 for v in values) / total
    return ExactMoments(expectation=expectation, bias=expectation - Ybar, mse=mse)
