"""Command-line front end.

Commands: equations, ml-degree, discriminant, classify, census.
Exit codes: 0 success, 2 usage/input errors, 3 ML-degree failures,
4 resource limits, 5 unlucky randomness, 6 shape-position failures.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .config import RunConfig
from .discriminant import dxj_elimination, dxj_interpolate
from .errors import (
    DatadiscError,
    NotShapePosition,
    NotZeroDimensional,
    ParseError,
    ResourceLimit,
    UnluckyRandomness,
)
from .likelihood import (
    bundled_model_path,
    dx_p,
    load_input,
    ml_degree,
)
from .polyring import format_polynomial, parse_polynomial
from .realclass import classify_at, component_census

EXIT_USAGE = 2
EXIT_MLDEGREE = 3
EXIT_RESOURCE = 4
EXIT_UNLUCKY = 5
EXIT_SHAPE = 6

_SIGN_TEXT = {-1: "-", 0: "0", 1: "+", None: "n/a"}


def _resolve_input(ref: str) -> Path:
    p = Path(ref)
    if p.is_file():
        return p
    try:
        return bundled_model_path(ref)
    except FileNotFoundError:
        raise FileNotFoundError(
            f"{ref!r} is neither a file nor a bundled model"
        ) from None


def _emit(payload: dict, text_lines: list[str], config: RunConfig) -> None:
    if config.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if config.output_path:
        config.output_path.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _timed(config: RunConfig, started: float) -> int | None:
    if not config.timings:
        return None
    return int((time.monotonic() - started) * 1000)


# -- commands -------------------------------------------------------------------


def cmd_equations(args, config: RunConfig) -> int:
    system = load_input(_resolve_input(args.model))
    lines = [
        f"F{i} = {format_polynomial(f)}"
        for i, f in enumerate(system.equations)
    ]
    lines.append(f"J = {format_polynomial(system.jacobian_det)}")
    payload = {
        "model": system.name,
        "unknowns": list(system.unknowns),
        "parameters": list(system.parameters),
        "equations": [format_polynomial(f) for f in system.equations],
        "jacobian": format_polynomial(system.jacobian_det),
    }
    _emit(payload, lines, config)
    return 0


def cmd_mldegree(args, config: RunConfig) -> int:
    system = load_input(_resolve_input(args.model))
    result = ml_degree(
        system, seed=config.seed, trials=args.trials, limits=config.limits()
    )
    payload = {
        "model": system.name,
        "seed": config.seed,
        "value": result.value,
        "agreed": result.agreed,
        "trials": [
            {"data": list(data), "count": count}
            for data, count in result.trials
        ],
    }
    lines = [f"ml-degree = {result.value}"] + [
        f"  data {list(d)} -> {c} solutions" for d, c in result.trials
    ]
    if not result.agreed:
        lines.insert(0, "trials disagreed; no stable ML-degree")
        _emit(payload, lines, config)
        return EXIT_MLDEGREE
    _emit(payload, lines, config)
    return 0


def cmd_discriminant(args, config: RunConfig) -> int:
    started = time.monotonic()
    system = load_input(_resolve_input(args.model))
    if args.part == "p":
        poly = dx_p(system)
        payload = {
            "model": system.name,
            "method": "product",
            "strategy": None,
            "seed": config.seed,
            "total_degree": int(poly.total_degree()),
            "per_variable_degrees": [1] * len(system.parameters),
            "shear": None,
            "samples": 0,
            "retries": 0,
            "polynomial": format_polynomial(poly),
            "wall_time_ms": _timed(config, started),
        }
        _emit(payload, [f"DX_p = {format_polynomial(poly)}"], config)
        return 0
    if args.method == "elim":
        out = dxj_elimination(system, limits=config.limits(), seed=config.seed)
        strategy = None
    else:
        strategy = "S1" if config.strategy.upper() in ("S1", "1") else "S2"
        out = dxj_interpolate(
            system,
            seed=config.seed,
            strategy=strategy,
            pivot=config.pivot,
            jobs=config.jobs,
            limits=config.limits(),
        )
    for w in out.warnings:
        print(f"warning: {w}", file=sys.stderr)
    payload = {
        "model": system.name,
        "method": out.method,
        "strategy": strategy,
        "seed": out.seed,
        "total_degree": out.degree_profile.total,
        "per_variable_degrees": list(out.degree_profile.per_variable),
        "shear": list(out.shear.coefficients) if out.shear else None,
        "samples": out.samples,
        "retries": out.retries_used,
        "polynomial": format_polynomial(out.polynomial),
        "wall_time_ms": _timed(config, started),
    }
    lines = [
        f"DX_J ({out.method}) = {format_polynomial(out.polynomial)}",
        f"total degree {out.degree_profile.total}, per-variable "
        f"{list(out.degree_profile.per_variable)}",
        f"samples {out.samples}, retries {out.retries_used}",
    ]
    _emit(payload, lines, config)
    return 0


def _parse_data(text: str, arity: int) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != arity:
        raise ValueError(f"expected {arity} comma-separated values")
    return [Fraction(p) for p in parts]


def _compute_dxj(system, args, config: RunConfig):
    if getattr(args, "skip_dxj", False):
        return None
    if getattr(args, "dxj_from", None):
        from .discriminant import parameter_ring

        text = Path(args.dxj_from).read_text(encoding="utf-8").strip()
        return parse_polynomial(text, parameter_ring(system))
    out = dxj_interpolate(
        system,
        seed=config.seed,
        strategy="S1" if config.strategy.upper() in ("S1", "1") else "S2",
        pivot=config.pivot,
        jobs=config.jobs,
        limits=config.limits(),
    )
    return out.polynomial


def cmd_classify(args, config: RunConfig) -> int:
    system = load_input(_resolve_input(args.model))
    try:
        data = _parse_data(args.data, len(system.parameters))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    dxj = _compute_dxj(system, args, config)
    result = classify_at(
        system, data, dxj, seed=config.seed, limits=config.limits()
    )
    payload = {
        "model": system.name,
        "data": [str(v) for v in result.data],
        "real_count": result.real_count,
        "positive_count": result.positive_count,
        "dxj_sign": _SIGN_TEXT[result.dxj_sign],
        "dxp_zero": result.dxp_zero,
        "shape_variable": result.shape_variable,
        "seed": config.seed,
    }
    lines = [
        f"data = {[str(v) for v in result.data]}",
        f"real solutions     = {result.real_count}",
        f"positive solutions = {result.positive_count}",
        f"sign(DX_J)         = {_SIGN_TEXT[result.dxj_sign]}",
        f"DX_p vanishes      = {result.dxp_zero}",
    ]
    _emit(payload, lines, config)
    return 0


def cmd_census(args, config: RunConfig) -> int:
    system = load_input(_resolve_input(args.model))
    dxj = _compute_dxj(system, args, config)
    if dxj is None:
        print("error: census needs DX_J (omit --skip-dxj)", file=sys.stderr)
        return EXIT_USAGE
    result = component_census(
        system, dxj, trials=args.trials, seed=config.seed,
        limits=config.limits(),
    )
    payload = {
        "model": system.name,
        "seed": config.seed,
        "trials": args.trials,
        "census": [
            {
                "dxj_sign": _SIGN_TEXT[sign],
                "real_count": real,
                "positive_count": pos,
                "multiplicity": count,
            }
            for sign, real, pos, count in result.classes
        ],
        "skipped": result.skipped,
    }
    lines = ["sign(DX_J)  real  positive  samples"]
    for sign, real, pos, count in result.classes:
        lines.append(
            f"{_SIGN_TEXT[sign]:>10}  {real:>4}  {pos:>8}  {count:>7}"
        )
    if result.skipped:
        lines.append(f"skipped: {result.skipped}")
    _emit(payload, lines, config)
    return 0


# -- argument plumbing -----------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("model", help="model file, .sys file, or bundled name")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--pivot", default=None, help="distinguished parameter")
    sub.add_argument("--time-budget", type=float, default=600.0,
                     metavar="SECONDS")
    sub.add_argument("--max-pairs", type=int, default=200_000)
    sub.add_argument("--output", type=Path, default=None)
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--jobs", type=int, default=None,
                     help="parallel sampling workers (default: all cores)")
    sub.add_argument("--timings", action="store_true",
                     help="include wall_time_ms in JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="datadisc",
        description="Data-discriminants of likelihood equations, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equations", help="print the Lagrange system and J")
    _add_common(p)
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("ml-degree", help="count solutions at generic data")
    _add_common(p)
    p.add_argument("--trials", type=int, default=2)
    p.set_defaults(func=cmd_mldegree)

    p = sub.add_parser("discriminant", help="compute DX_J or DX_p")
    _add_common(p)
    p.add_argument("--part", choices=("J", "p"), required=True)
    p.add_argument("--method", choices=("elim", "interp"), default="interp")
    p.add_argument("--strategy", choices=("1", "2", "S1", "S2"), default="1")
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("classify", help="real/positive counts at one data "
                                        "vector")
    _add_common(p)
    p.add_argument("--data", required=True,
                   help="comma-separated rationals, e.g. 51,18,73/2,25")
    p.add_argument("--dxj-from", default=None,
                   help="file with the canonical DX_J text (skips "
                        "recomputation)")
    p.add_argument("--skip-dxj", action="store_true",
                   help="do not compute DX_J; sign reported as n/a")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="classify many random data vectors")
    _add_common(p)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--dxj-from", default=None)
    p.set_defaults(func=cmd_census)

    return parser


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        seed=args.seed,
        strategy=getattr(args, "strategy", "S1"),
        pivot=args.pivot,
        time_budget_s=args.time_budget,
        max_pairs=args.max_pairs,
        output_path=args.output,
        format=args.format,
        timings=args.timings,
    )
    if args.jobs is not None:
        cfg.jobs = max(1, args.jobs)
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from(args)
    try:
        return args.func(args, config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, NotZeroDimensional) as exc:
        kind = EXIT_MLDEGREE if isinstance(exc, NotZeroDimensional) else EXIT_USAGE
        print(f"error: {exc}", file=sys.stderr)
        return kind
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except UnluckyRandomness as exc:
        print(f"error: unlucky randomness: {exc}", file=sys.stderr)
        return EXIT_UNLUCKY
    except NotShapePosition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except DatadiscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
