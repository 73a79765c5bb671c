"""Command-line front end.

Subcommands::

    qcorr measure   correlation measures of one state file
    qcorr evolve    relaxation trajectory of a Bell-diagonal state
    qcorr protocol  direct local-measurement run vs. full decomposition
    qcorr batch     seeded cross-check campaigns over random states

Exit codes: 0 success, 2 input/parse error, 3 invalid state,
4 property violation in a batch run. The QCORR_LOG environment variable
sets log verbosity only; it never affects numeric output.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import batch as batch_mod
from .bloch import BellDiagonalState, BlochRecord, InvalidStateError, \
    bloch_decompose, check_density_matrix
from .channels import detect_transition, make_trajectory
from .io import (
    ConfigError,
    StateFormatError,
    build_config,
    dump_json,
    format_float,
    load_state_file,
    parse_config_file,
    report_text,
    serialize_report,
    serialize_trajectory,
)
from .measures import UNITS_DEVIATION, UNITS_FULL, full_report, report_from_record
from .protocol import measurement_budget, run_direct_protocol

log = logging.getLogger("qcorr")

DEFAULT_EPSILON = 1e-5


def _state_to_matrix(state, epsilon: float | None):
    """Full density matrix plus (mode, epsilon) bookkeeping for a loaded state."""
    if state.kind == "matrix":
        return state.matrix, "full", None
    if state.bell.mode == "deviation":
        eps = DEFAULT_EPSILON if epsilon is None else epsilon
        return state.bell.density_matrix(epsilon=eps), "deviation", eps
    return state.bell.density_matrix(), "full", None


def cmd_measure(args) -> int:
    state = load_state_file(args.state)
    rho, mode, eps = _state_to_matrix(state, args.epsilon)
    check_density_matrix(rho)
    include = True if args.include_local_bloch is None else args.include_local_bloch
    report = full_report(rho, mode=mode, epsilon=eps, include_local_bloch=include)
    print(report_text(report))
    if args.output:
        Path(args.output).write_text(serialize_report(report, args.format))
        log.info("wrote report to %s", args.output)
    return 0


def _evolve_config(args):
    raw = parse_config_file(args.config) if args.config else {}
    overrides = {
        "state_file": args.state,
        "t_max": args.t_max,
        "dt": args.dt,
        "n_points": args.points,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "include_local_bloch": args.include_local_bloch,
        "output": args.output,
        "format": args.format,
    }
    return build_config(raw, overrides)


def cmd_evolve(args) -> int:
    cfg = _evolve_config(args)
    if cfg.output is None:
        raise ConfigError("evolve needs an output path (--output or 'output = ...')")
    if cfg.state_file is not None:
        state = load_state_file(cfg.state_file)
        if state.kind != "bell":
            raise ConfigError("evolve requires a bell-form state (kind 'bell')")
        bell = state.bell
    else:
        bell = BellDiagonalState(*cfg.state_coeffs, mode=cfg.state_mode)
    traj = make_trajectory(
        bell,
        cfg.relaxation,
        t_max=cfg.t_max,
        dt=cfg.dt,
        n_points=cfg.n_points,
        include_local_bloch=cfg.include_local_bloch,
    )
    Path(cfg.output).write_text(serialize_trajectory(traj, cfg.format))
    log.info("wrote %d trajectory points to %s", cfg.n_points, cfg.output)
    hit = detect_transition(traj)
    if hit is None:
        print("t_star = none")
    else:
        print(f"t_star = {format_float(hit.t_star)} (index {hit.index})")
    return 0


def cmd_protocol(args) -> int:
    state = load_state_file(args.state)
    rho, mode, eps = _state_to_matrix(state, args.epsilon)
    check_density_matrix(rho)
    if args.shots is not None and args.seed is None:
        raise ConfigError("a seed is mandatory whenever shots is set")
    seed = 0 if args.seed is None else args.seed
    measured = run_direct_protocol(rho, shots=args.shots, seed=seed)
    exact = run_direct_protocol(rho)
    tomo = bloch_decompose(rho, 2)

    scale = eps if mode == "deviation" else 1.0
    units = UNITS_DEVIATION if mode == "deviation" else UNITS_FULL
    raw = measured.to_bloch_record()
    direct_rec = BlochRecord(x=raw.x / scale, y=raw.y, C=raw.C / scale)
    tomo_rec = BlochRecord(x=tomo.x / scale, y=tomo.y / scale, C=tomo.C / scale)
    direct_report = report_from_record(direct_rec, 2, rho=rho, units=units)
    tomo_report = report_from_record(tomo_rec, 2, rho=rho, units=units)

    direct_n, tomo_n = measurement_budget(2)
    print(f"budget: direct: {direct_n}, tomography: {tomo_n}")
    print("[direct]")
    print(report_text(direct_report))
    print("[tomography]")
    print(report_text(tomo_report))
    diffs = [abs(direct_report.d_g - tomo_report.d_g), abs(direct_report.q - tomo_report.q)]
    if direct_report.q_n is not None and tomo_report.q_n is not None:
        diffs.append(abs(direct_report.q_n - tomo_report.q_n))
    max_diff = max(diffs)
    print(f"max measure difference = {format_float(max_diff)}")

    doc = {
        "budget": {"direct": direct_n, "tomography": tomo_n},
        "x_est": measured.x_est / scale,
        "c_est": measured.c_est / scale,
        "readout_count": measured.readout_count,
        "shots": measured.shots,
        "seed": measured.seed,
        "direct": direct_report.as_record(),
        "tomography": tomo_report.as_record(),
        "max_measure_difference": max_diff,
    }
    if args.shots is not None:
        x_err = np.abs(measured.x_est - exact.x_est) / scale
        c_err = np.abs(measured.c_est - exact.c_est) / scale
        print("statistical error (x readouts): "
              + " ".join(format_float(v) for v in x_err))
        for i, row in enumerate(c_err, start=1):
            print(f"statistical error (c row {i}): "
                  + " ".join(format_float(v) for v in row))
        doc["x_error"] = x_err
        doc["c_error"] = c_err
    if args.output:
        Path(args.output).write_text(dump_json(doc) + "\n")
        log.info("wrote protocol report to %s", args.output)
    return 0


def cmd_batch(args) -> int:
    dims = tuple(int(part) for part in args.dims.split(",") if part)
    if not dims or any(d < 2 for d in dims):
        raise ConfigError(f"--dims must list dimensions >= 2, got {args.dims!r}")
    results = batch_mod.run_batch_campaigns(args.n, args.seed, dims)
    print(batch_mod.render_batch_report(results, "text"), end="")
    if args.output:
        Path(args.output).write_text(batch_mod.render_batch_report(results, args.format))
        log.info("wrote batch report to %s", args.output)
    if batch_mod.total_violations(results):
        print("batch: property violations detected", file=sys.stderr)
        return 4
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Quantum-correlation measures, direct-measurement protocol "
        "and relaxation dynamics for qubit-qudit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", help="correlation measures of a state file")
    measure.add_argument("--state", required=True, help="state file (JSON)")
    measure.add_argument("--epsilon", type=float, default=None,
                         help="polarization for deviation-mode states (default 1e-5)")
    measure.add_argument("--include-local-bloch", action=argparse.BooleanOptionalAction,
                         default=None, help="include local Bloch vectors in S (default on)")
    measure.add_argument("--output", default=None)
    measure.add_argument("--format", choices=("csv", "json"), default="csv")
    measure.set_defaults(func=cmd_measure)

    evolve = sub.add_parser("evolve", help="relaxation trajectory of a Bell state")
    evolve.add_argument("--config", default=None, help="key = value config file")
    evolve.add_argument("--state", default=None, help="bell-form state file")
    evolve.add_argument("--t-max", dest="t_max", type=float, default=None)
    evolve.add_argument("--dt", type=float, default=None)
    evolve.add_argument("--points", type=int, default=None)
    evolve.add_argument("--seed", type=int, default=None)
    evolve.add_argument("--epsilon", type=float, default=None)
    evolve.add_argument("--include-local-bloch", action=argparse.BooleanOptionalAction,
                        default=None)
    evolve.add_argument("--output", default=None)
    evolve.add_argument("--format", choices=("csv", "json"), default=None)
    evolve.set_defaults(func=cmd_evolve)

    protocol = sub.add_parser("protocol", help="direct measurement vs decomposition")
    protocol.add_argument("--state", required=True)
    protocol.add_argument("--shots", type=int, default=None)
    protocol.add_argument("--seed", type=int, default=None)
    protocol.add_argument("--epsilon", type=float, default=None)
    protocol.add_argument("--output", default=None)
    protocol.add_argument("--format", choices=("csv", "json"), default="json")
    protocol.set_defaults(func=cmd_protocol)

    batch = sub.add_parser("batch", help="random-state cross-check campaigns")
    batch.add_argument("--n", type=int, default=1000)
    batch.add_argument("--seed", type=int, default=0)
    batch.add_argument("--dims", default="2,3")
    batch.add_argument("--output", default=None)
    batch.add_argument("--format", choices=("csv", "json"), default="csv")
    batch.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("QCORR_LOG", "WARNING").upper())
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StateFormatError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidStateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
