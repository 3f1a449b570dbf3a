"""Command-line interface.

Subcommands: analyze, plan, theory, simulate, surface, generate.  Exit code
0 on success, 2 for input or usage problems, 3 for unexpected internal
failures.  simulate and generate write a small run manifest next to their
primary output; volatile facts (timestamp, wall time) live only there, so
the reports themselves are byte-identical across reruns of one seed.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import EstimationError, PoleAtHalfError
from .estimators import (
    Product,
    Ratio,
    SampleMean,
    UnbiasedAOE,
    parse_estimator,
)
from .population import (
    SummaryStats,
    load_population_csv,
    make_design,
    summarize,
)
from .sampling import plan_sample_size
from .simulation import SimConfig, run_simulation
from .synthetic import MomentTargets, generate_population
from .theory import (
    Baseline,
    Branch,
    SurfaceKind,
    aoe_parameters,
    bias1_rpr,
    biasfree_betas,
    dominates,
    minimal_mse1,
    mse1_grad,
    mse1_rpr,
    relative_efficiency,
    surface_grid,
)

__all__ = ["main", "run"]


def _finite_or_none(value):
    if value is None:
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _write_manifest(out_path: Path, command: str, seed, inputs: dict,
                    outputs: list[str], wall_time_s: float) -> Path:
    path = out_path.with_name(out_path.stem + ".manifest.json")
    payload = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "inputs": inputs,
        "outputs": outputs,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_time_s": round(wall_time_s, 3),
    }
    path.write_text(_dump_json(payload))
    return path


def _split_estimators(text: str) -> list[str]:
    """Split a comma-separated token list.

    The rpr token is the one form with an internal comma
    (rpr:<alpha>,<beta>), so a fragment following an incomplete rpr piece
    is glued back on; a bare number is never a valid token by itself."""
    tokens: list[str] = []
    for piece in (p.strip() for p in text.split(",")):
        if tokens and tokens[-1].startswith("rpr:") and "," not in tokens[-1]:
            tokens[-1] += "," + piece
        else:
            tokens.append(piece)
    return [t for t in tokens if t]


def _parse_design(text: str):
    try:
        n_text, N_text = text.split(",")
        return make_design(int(n_text), int(N_text))
    except ValueError:
        raise EstimationError(
            f"bad design {text!r}; expected 'n,N' such as '112,365'"
        ) from None


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise EstimationError(
            f"bad range {text!r}; expected 'start:stop:step'"
        )
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise EstimationError(f"non-numeric bound in range {text!r}") from None


def _stats_payload(st: SummaryStats) -> dict:
    return {
        "mean_y": st.mean_y,
        "mean_x": st.mean_x,
        "var_y": st.var_y,
        "var_x": st.var_x,
        "sd_y": st.sd_y,
        "sd_x": st.sd_x,
        "cov_xy": st.cov_xy,
        "r": st.r,
        "cv_y": st.cv_y,
        "cv_x": st.cv_x,
        "c": st.c,
    }


def _load_stats(path_text: str) -> SummaryStats:
    path = Path(path_text)
    if path.suffix.lower() == ".csv":
        return summarize(load_population_csv(path))
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise EstimationError(f"stats file {path}: {exc}") from None
    try:
        sd_y = raw["sd_y"] if "sd_y" in raw else math.sqrt(raw["var_y"])
        sd_x = raw["sd_x"] if "sd_x" in raw else math.sqrt(raw["var_x"])
        return SummaryStats.from_moments(
            mean_y=raw["mean_y"], mean_x=raw["mean_x"],
            sd_y=sd_y, sd_x=sd_x, r=raw["r"],
        )
    except KeyError as exc:
        raise EstimationError(
            f"stats file {path} missing key {exc}"
        ) from None


def _cmd_analyze(args) -> int:
    pop = load_population_csv(args.population)
    st = summarize(pop)
    payload = {"population_size": pop.size, **_stats_payload(st)}
    if args.design is not None:
        d = _parse_design(args.design)
        payload["design"] = {
            "n": d.n, "N": d.N, "f": d.f, "fpc_rate": d.fpc_rate,
        }
    if args.format == "json":
        sys.stdout.write(_dump_json(payload))
    else:
        for key, value in payload.items():
            sys.stdout.write(f"{key}: {value}\n")
    return 0


def _cmd_plan(args) -> int:
    if args.margin is not None:
        margin = args.margin
    elif args.margin_percent is not None:
        if args.mean is None:
            raise EstimationError("--margin-percent needs --mean")
        margin = args.margin_percent / 100.0 * abs(args.mean)
    else:
        raise EstimationError("plan needs --margin or --margin-percent")
    plan = plan_sample_size(
        args.sigma2, margin, args.confidence, args.population_size
    )
    sys.stdout.write(_dump_json({
        "sigma2": args.sigma2,
        "margin": plan.d,
        "confidence": plan.confidence,
        "z": plan.z,
        "population_size": args.population_size,
        "n0": plan.n0,
        "n": plan.n,
    }))
    return 0


def _cmd_theory(args) -> int:
    st = _load_stats(args.stats) if args.stats else None
    if args.c is not None:
        c = args.c
    elif st is not None:
        c = st.c
    else:
        raise EstimationError("theory needs --stats and/or --c")
    everything = not (args.aoe or args.re)
    payload: dict = {"c": c}

    d = _parse_design(args.design) if args.design else None
    have_point = args.alpha is not None and args.beta is not None
    if everything and have_point:
        alpha, beta = args.alpha, args.beta
        payload["alpha"] = alpha
        payload["beta"] = beta
        payload["dominates"] = {
            "mean": dominates(Baseline.SAMPLE_MEAN, alpha, beta, c),
            "ratio": dominates(Baseline.RATIO, alpha, beta, c),
            "product": dominates(Baseline.PRODUCT, alpha, beta, c),
        }
        payload["biasfree_betas"] = list(biasfree_betas(alpha, c))
        if st is not None and d is not None:
            payload["bias1"] = bias1_rpr(alpha, beta, st, d)
            payload["mse1"] = mse1_rpr(alpha, beta, st, d)
            payload["gradient"] = list(mse1_grad(alpha, beta, st, d))
            payload["minimal_mse1"] = minimal_mse1(st, d)

    if everything or args.aoe:
        try:
            aoe = {}
            for branch in (Branch.MINUS_MINUS, Branch.PLUS_PLUS):
                sol = aoe_parameters(c, branch)
                aoe[branch.value.replace("-", "_")] = {
                    "alpha_star": _finite_or_none(sol.alpha_star),
                    "beta_star": _finite_or_none(sol.beta_star),
                    "is_real": sol.is_real,
                }
            payload["aoe"] = aoe
        except PoleAtHalfError as exc:
            payload["aoe"] = None
            payload["aoe_note"] = str(exc)

    if (everything or args.re) and st is not None:
        # The fpc factor cancels in every MSE ratio, so any valid design
        # serves when the caller supplied none.
        d_re = d if d is not None else make_design(1, 2)
        payload["re_vs_sample_mean_percent"] = {
            "ratio": 100.0 * relative_efficiency(SampleMean(), Ratio(), st, d_re),
            "product": 100.0 * relative_efficiency(SampleMean(), Product(), st, d_re),
            "aoe_at_c": 100.0 * relative_efficiency(SampleMean(), UnbiasedAOE(c), st, d_re),
        }
    sys.stdout.write(_dump_json(payload))
    return 0


def _report_payload(result) -> dict:
    orders = sorted(
        result.ranking.counts.items(), key=lambda item: (-item[1], item[0])
    )
    return {
        "meta": result.meta,
        "estimators": [dataclasses.asdict(rep) for rep in result.reports],
        "ranking": {
            "excluded_draws": result.ranking.excluded_draws,
            "orders": [
                {"order": list(order), "count": count} for order, count in orders
            ],
        },
    }


def _cmd_simulate(args) -> int:
    started = time.perf_counter()
    pop = load_population_csv(args.population)
    specs = tuple(parse_estimator(tok) for tok in _split_estimators(args.estimators))
    cfg = SimConfig(
        reps=args.reps, n=args.n, seed=args.seed,
        confidence=args.confidence, estimators=specs,
    )
    result = run_simulation(
        pop, cfg, threads=args.threads, dump_path=args.dump_estimates
    )
    out = Path(args.out)
    out.write_text(_dump_json(_report_payload(result)))
    outputs = [str(out)]
    if args.dump_estimates:
        outputs.append(str(args.dump_estimates))
    _write_manifest(
        out, "simulate", args.seed,
        inputs={
            "population": str(args.population),
            "reps": args.reps, "n": args.n,
            "confidence": args.confidence,
            "estimators": args.estimators,
            "threads": args.threads,
        },
        outputs=outputs,
        wall_time_s=time.perf_counter() - started,
    )
    width = max(len(rep.label) for rep in result.reports)
    sys.stdout.write(
        f"{'estimator':<{width}}  coverage  mse           re_vs_mean\n"
    )
    for rep in result.reports:
        mse = "n/a" if rep.mse_empirical is None else f"{rep.mse_empirical:.6e}"
        re = "n/a" if rep.re_vs_sample_mean is None else f"{100 * rep.re_vs_sample_mean:9.2f}%"
        sys.stdout.write(
            f"{rep.label:<{width}}  {rep.coverage:8.4f}  {mse:12s}  {re}\n"
        )
    sys.stdout.write(f"report written to {out}\n")
    return 0


def _cmd_surface(args) -> int:
    kind = {
        "biasfree": SurfaceKind.BIAS_FREE,
        "aoe": SurfaceKind.AOE,
        "region": SurfaceKind.DOMINANCE,
    }[args.kind]
    rows = surface_grid(
        kind,
        _parse_range(args.alpha),
        _parse_range(args.c),
        _parse_range(args.beta) if args.beta else None,
    )
    header = "alpha,beta,c,indicator" if kind is SurfaceKind.DOMINANCE else "alpha,beta,c"
    lines = [header]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(f"{len(rows)} rows written to {args.out}\n")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_generate(args) -> int:
    started = time.perf_counter()
    targets = MomentTargets(
        size=args.size, mean_y=args.mean_y, mean_x=args.mean_x,
        cv_y=args.cv_y, cv_x=args.cv_x, r=args.r,
    )
    pop = generate_population(targets, args.seed)
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        fh.write("y,x\n")
        for yv, xv in zip(pop.y, pop.x):
            fh.write(f"{float(yv)!r},{float(xv)!r}\n")
    _write_manifest(
        out, "generate", args.seed,
        inputs={
            "size": args.size, "mean_y": args.mean_y, "mean_x": args.mean_x,
            "cv_y": args.cv_y, "cv_x": args.cv_x, "r": args.r,
        },
        outputs=[str(out)],
        wall_time_s=time.perf_counter() - started,
    )
    st = summarize(pop)
    sys.stdout.write(f"{pop.size} rows written to {out} (c={st.c!r})\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpratio",
        description="Ratio-product-ratio estimation of a finite population mean",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="summarize a y,x population CSV")
    p.add_argument("population")
    p.add_argument("--design", help="sample design as 'n,N'")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("plan", help="sample size for a target margin")
    p.add_argument("--sigma2", type=float, required=True)
    p.add_argument("--margin", type=float)
    p.add_argument("--margin-percent", type=float,
                   help="margin as a percentage of --mean")
    p.add_argument("--mean", type=float,
                   help="target mean, used with --margin-percent")
    p.add_argument("--confidence", type=float, default=0.90)
    p.add_argument("--population-size", type=int, required=True)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("theory", help="first-order bias/MSE/dominance at (alpha, beta)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--stats", help="population CSV or stats JSON file")
    p.add_argument("--c", type=float, help="moment ratio override")
    p.add_argument("--design", help="sample design as 'n,N'")
    p.add_argument("--aoe", action="store_true",
                   help="print only the optimal-parameter solution")
    p.add_argument("--re", action="store_true",
                   help="print only the relative-efficiency table")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("simulate", help="Monte Carlo estimator comparison")
    p.add_argument("--population", required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--confidence", type=float, default=0.90)
    p.add_argument(
        "--estimators", default="mean,ratio,product",
        help="comma-separated tokens, e.g. 'mean,ratio,product,aoe:0.6092'",
    )
    p.add_argument("--out", default="report.json")
    p.add_argument("--dump-estimates", help="per-replication CSV path")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("surface", help="tabulate a parameter-space surface")
    p.add_argument("--kind", choices=("biasfree", "aoe", "region"), required=True)
    p.add_argument("--alpha", required=True, help="grid as 'start:stop:step'")
    p.add_argument("--c", required=True, help="grid as 'start:stop:step'")
    p.add_argument("--beta", help="grid as 'start:stop:step' (region only)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("generate", help="synthesize a population CSV with given moments")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mean-y", type=float, required=True)
    p.add_argument("--mean-x", type=float, required=True)
    p.add_argument("--cv-y", type=float, required=True)
    p.add_argument("--cv-x", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (EstimationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - invariant escapes
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
