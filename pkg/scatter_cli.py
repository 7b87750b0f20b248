#!/usr/bin/env python3
"""
Command-line front end for the waveguide scattering library.

Every command writes a table (CSV or JSON) for plotting elsewhere; ``verify``
writes a JSON report and exits 1 when any check fails.

Usage:
    # Single-photon spectrum over k
    waveguide-scatter spectrum --grid -5:5:201 --out output/spectrum.csv

    # Two-photon wavefunctions at E - 2 omega = -1.5, D = 0
    waveguide-scatter wavefunctions --dE -1.5 --delta 0 --grid -10:10:401

    # Background fluorescence surface
    waveguide-scatter fluorescence --dE 2 --grid -4:4:81 --format json

    # Verification suites
    waveguide-scatter verify --seed 7 --out output/verify.json
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, model_validator

from app.bethe import background_B
from app.config import SUPPORTED_FORMATS, Settings, load_settings, validate_settings
from app.core import ExportError, ImpurityParams, MomentumPair, make_params
from app.exports import write_report, write_table
from app.numerics import QuadratureSpec
from app.single_photon import two_mode_coeffs
from app.two_mode import Sector, momentum_distribution, r2, rt, t2
from app.utils import parse_grid, setup_logging
from app.verification import DEFAULT_SEED, run_verification

logger = setup_logging()

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

Row = List[complex]
RowFunction = Callable[[float], List[Row]]


class Command(str, Enum):
    SPECTRUM = "spectrum"
    WAVEFUNCTIONS = "wavefunctions"
    FLUORESCENCE = "fluorescence"
    MOMENTUM = "momentum"
    VERIFY = "verify"


# Grid defaults; spectrum and momentum grids are in units of gamma around their
# natural origin, wavefunction and fluorescence grids are already dimensionless.
DEFAULT_GRIDS: Dict[Command, str] = {
    Command.SPECTRUM: "-5:5:201",
    Command.WAVEFUNCTIONS: "-10:10:401",
    Command.FLUORESCENCE: "-4:4:81",
    Command.MOMENTUM: "-3:3:121",
    Command.VERIFY: "0:1:2",
}


# =============================================================================
# Run configuration
# =============================================================================


class GridSpec(BaseModel):
    min: float = Field(..., description="First grid value")
    max: float = Field(..., description="Last grid value")
    points: int = Field(..., ge=2, description="Number of grid points")

    @model_validator(mode="after")
    def _check_order(self) -> "GridSpec":
        if not self.min < self.max:
            raise ValueError("grid min must be smaller than grid max")
        return self

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        lower, upper, points = parse_grid(text)
        return cls(min=lower, max=upper, points=points)

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)


class RunConfig(BaseModel):
    command: Command
    omega: float = Field(0.0, description="Impurity transition frequency")
    gamma: float = Field(1.0, gt=0, description="Decay rate V^2")
    d_e: float = Field(0.0, description="Pair detuning E - 2 omega")
    delta: float = Field(0.0, description="Relative momentum label D = (k - p) / 2")
    grid: GridSpec
    output_path: Path
    format: Literal["csv", "json"] = "csv"
    seed: int = DEFAULT_SEED
    tolerance: Optional[float] = Field(None, gt=0, description="Override every check tolerance")
    max_workers: int = Field(4, ge=1)

    @property
    def params(self) -> ImpurityParams:
        return make_params(self.omega, self.gamma)

    @property
    def energy(self) -> float:
        return 2.0 * self.omega + self.d_e


# =============================================================================
# Grid evaluation
# =============================================================================


def evaluate_grid(values: Sequence[float], row_fn: RowFunction, max_workers: int) -> List[Row]:
    """Evaluate ``row_fn`` at every grid value and return the rows in grid order."""
    results: Dict[int, List[Row]] = {}
    failures: List[Exception] = []

    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(values)))) as executor:
        futures = {executor.submit(row_fn, float(value)): index for index, value in enumerate(values)}
        for fut in as_completed(futures):
            index = futures[fut]
            try:
                results[index] = fut.result()
            except Exception as exc:
                logger.error("Grid point %d failed: %s", index, exc, exc_info=True)
                failures.append(exc)

    if failures:
        raise failures[0]
    return [row for index in range(len(values)) for row in results[index]]


def spectrum_rows(config: RunConfig) -> List[Row]:
    params = config.params

    def row(scaled: float) -> List[Row]:
        k = params.omega + scaled * params.gamma
        t_bar, r_bar = two_mode_coeffs(k, params)
        return [[k, abs(t_bar) ** 2, abs(r_bar) ** 2]]

    return evaluate_grid(config.grid.values(), row, config.max_workers)


def wavefunction_rows(config: RunConfig) -> List[Row]:
    """|t2|^2 and |r2|^2 against xbar = Gamma x / 2; |rt|^2 against xbar_c on the same grid."""
    params, energy, delta = config.params, config.energy, config.delta

    def row(scaled: float) -> List[Row]:
        position = 2.0 * scaled / params.gamma
        return [
            [
                scaled,
                float(abs(t2(energy, delta, 0.0, position, params)) ** 2),
                float(abs(r2(energy, delta, 0.0, position, params)) ** 2),
                float(abs(rt(energy, delta, position, 0.0, params)) ** 2),
            ]
        ]

    return evaluate_grid(config.grid.values(), row, config.max_workers)


def fluorescence_rows(config: RunConfig) -> List[Row]:
    """|Bbar|^2 with Bbar = (Gamma/2) B over a square grid of scaled deltas."""
    params, energy = config.params, config.energy
    half = 0.5 * params.gamma
    grid = config.grid.values()

    def row(first: float) -> List[Row]:
        weights = np.abs(half * background_B(energy, first * half, grid * half, params)) ** 2
        return [[first, second, float(weight)] for second, weight in zip(grid, weights)]

    return evaluate_grid(grid, row, config.max_workers)


def momentum_rows(config: RunConfig) -> List[Row]:
    params, energy = config.params, config.energy
    in_pair = MomentumPair.from_energy(energy, config.delta)

    def row(scaled: float) -> List[Row]:
        out = MomentumPair.from_energy(energy, scaled * params.gamma)
        signed = {
            Sector.RR: out,
            Sector.LL: MomentumPair(-out.k, -out.p),
            Sector.RL: MomentumPair(out.k, -out.p),
        }
        values: Row = [out.delta]
        for sector in Sector:
            element = momentum_distribution(sector, in_pair, signed[sector], params)
            values.extend([element.direct, element.exchange, element.correlated])
        return [values]

    return evaluate_grid(config.grid.values(), row, config.max_workers)


TABLES: Dict[Command, tuple] = {
    Command.SPECTRUM: (["k", "t_bar_abs2", "r_bar_abs2"], spectrum_rows),
    Command.WAVEFUNCTIONS: (["xbar", "t2_abs2", "r2_abs2", "rt_abs2"], wavefunction_rows),
    Command.FLUORESCENCE: (["delta1_bar", "delta2_bar", "b_bar_abs2"], fluorescence_rows),
    Command.MOMENTUM: (
        ["delta2"]
        + [f"{sector.value}_{part}" for sector in Sector for part in ("direct", "exchange", "correlated")],
        momentum_rows,
    ),
}


# =============================================================================
# Commands
# =============================================================================


def run_table(config: RunConfig) -> int:
    columns, build = TABLES[config.command]
    logger.info(
        "Computing %s (omega=%g, gamma=%g, dE=%g, delta=%g) on %d points",
        config.command.value,
        config.omega,
        config.gamma,
        config.d_e,
        config.delta,
        config.grid.points,
    )
    rows = build(config)
    write_table(config.output_path, columns, rows, fmt=config.format)
    return EXIT_OK


def run_verify(config: RunConfig, settings: Settings) -> int:
    if config.format != "json":
        logger.warning("Verification reports are always JSON; ignoring --format %s", config.format)
    report = run_verification(
        config.params,
        quadrature=QuadratureSpec.from_settings(settings.quadrature),
        wavepacket=settings.wavepacket,
        tolerance_override=config.tolerance,
        seed=config.seed,
        max_workers=config.max_workers,
    )
    write_report(config.output_path, report)
    for check in report.checks:
        if not check.passed:
            logger.warning(
                "FAILED %s: measured %.3e > tolerance %.1e", check.name, check.measured, check.tolerance
            )
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


# =============================================================================
# Argument parsing
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waveguide-scatter",
        description="One- and two-photon scattering off a two-level impurity in a waveguide",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Grids (min:max:points):
  spectrum       k - omega in units of gamma
  wavefunctions  xbar = gamma x / 2
  fluorescence   scaled deltas (2 D / gamma) on both axes
  momentum       outgoing D2 in units of gamma

Examples:
  %(prog)s spectrum --grid -5:5:201
  %(prog)s wavefunctions --dE -1.5 --delta 0 --format json
  %(prog)s fluorescence --dE 2 --grid -4:4:81
  %(prog)s verify --seed 7
        """,
    )
    parser.add_argument("command", choices=[command.value for command in Command])
    parser.add_argument("--omega", type=float, default=None, help="Transition frequency (default: settings)")
    parser.add_argument("--gamma", type=float, default=None, help="Decay rate V^2 (default: settings)")
    parser.add_argument("--dE", dest="d_e", type=float, default=0.0, help="Pair detuning E - 2 omega")
    parser.add_argument("--delta", type=float, default=0.0, help="Relative momentum D = (k - p) / 2")
    parser.add_argument("--grid", default=None, help="Grid as min:max:points")
    parser.add_argument("--out", default=None, help="Output path (default: <output_dir>/<command>.<format>)")
    parser.add_argument("--format", choices=SUPPORTED_FORMATS, default=None, help="Output format")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for verification sampling")
    parser.add_argument("--tolerance", type=float, default=None, help="Override every check tolerance (verify)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Merge parsed flags over the loaded settings."""
    command = Command(args.command)
    fmt = args.format or settings.output.default_format
    if command is Command.VERIFY:
        fmt = args.format or "json"
    output = Path(args.out) if args.out else Path(settings.output.output_dir) / f"{command.value}.{fmt}"
    return RunConfig(
        command=command,
        omega=settings.impurity.omega if args.omega is None else args.omega,
        gamma=settings.impurity.gamma if args.gamma is None else args.gamma,
        d_e=args.d_e,
        delta=args.delta,
        grid=GridSpec.parse(args.grid or DEFAULT_GRIDS[command]),
        output_path=output,
        format=fmt,
        seed=args.seed,
        tolerance=args.tolerance,
        max_workers=settings.output.max_workers,
    )


def attach_grid_values(argv: Sequence[str]) -> List[str]:
    """Join `--grid VALUE` into `--grid=VALUE` so grids with a negative minimum parse."""
    joined: List[str] = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token == "--grid" and index + 1 < len(argv):
            joined.append(f"--grid={argv[index + 1]}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = attach_grid_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.verbose:
        setup_logging(logging.DEBUG)

    settings = load_settings()
    problems = validate_settings(settings)
    if problems:
        for problem in problems:
            logger.error("Configuration error: %s", problem)
        return EXIT_USAGE

    try:
        config = build_config(args, settings)
        if config.command is Command.VERIFY:
            status = run_verify(config, settings)
        else:
            status = run_table(config)
    except (ExportError, OSError) as exc:
        logger.error("Output failed: %s", exc)
        return EXIT_IO
    except ValueError as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_USAGE

    logger.info("Finished %s -> %s (exit %d)", config.command.value, config.output_path, status)
    return status


if __name__ == "__main__":
    sys.exit(main())
