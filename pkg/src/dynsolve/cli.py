"""dynsolve command line: validate models, compute dynamics, run trajectories.

Subcommands:
  validate    parse a URDF and optionally check an extracted chain
  components  print H, c, g, f and tau for one joint state as JSON
  trajectory  sweep a trajectory file, compare measured torques, write reports
  gen-traj    write a sinusoidal excitation trajectory CSV

Exit codes: 0 success, 2 usage error, 3 input-format error,
4 model/config error, 5 numerical failure.
"""

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .chain import extract_chain, validate_chain
from .errors import (
    AsymmetryError,
    ConfigError,
    DimensionError,
    DynsolveError,
    FormatError,
    InputError,
    IoError,
    MissingMeasurementError,
    MissingParamError,
    ModelError,
    ParseError,
    SingularInertiaError,
    UnknownPluginError,
    UnsupportedJointError,
    UnsupportedOperationError,
)
from .friction import torques_from_currents
from .solvers import SolverConfig, create_solver
from .trajectory import (
    TrajectorySample,
    compare_torques,
    compute_along_trajectory,
    emit_report,
    generate_sinusoid,
    load_trajectory,
    write_trajectory_csv,
)
from .urdf import load_urdf

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_MODEL = 4
EXIT_NUMERIC = 5

_ERROR_CODES = (
    ((ParseError, FormatError, IoError, DimensionError, InputError,
      MissingMeasurementError), EXIT_INPUT),
    ((ModelError, UnsupportedJointError, ConfigError, UnknownPluginError,
      MissingParamError, UnsupportedOperationError), EXIT_MODEL),
    ((SingularInertiaError, AsymmetryError), EXIT_NUMERIC),
)


def _csv_vector(text):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {exc}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dynsolve",
        description="Robot-agnostic inverse dynamics on URDF kinematic chains.",
    )
    parser.add_argument("--version", action="version", version=f"dynsolve {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a URDF and check a chain")
    p.add_argument("--urdf", required=True, help="URDF file path")
    p.add_argument("--root", help="chain root link (requires --tip)")
    p.add_argument("--tip", help="chain tip link (requires --root)")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("components", help="dynamics components for one state")
    p.add_argument("--config", required=True, help="solver config JSON")
    p.add_argument("--q", required=True, type=_csv_vector,
                   help="joint positions, comma separated")
    p.add_argument("--qd", type=_csv_vector, help="joint velocities (default 0)")
    p.add_argument("--qdd", type=_csv_vector, help="joint accelerations (default 0)")
    p.set_defaults(handler=_cmd_components)

    p = sub.add_parser("trajectory", help="compute torques along a trajectory")
    p.add_argument("--config", required=True, help="solver config JSON")
    p.add_argument("--input", required=True, help="trajectory CSV")
    p.add_argument("--output", required=True,
                   help="report base path (writes <output>.csv and <output>.json)")
    p.add_argument("--differentiate", action="store_true",
                   help="fill missing qdd columns from qd by central differences")
    p.add_argument("--check-limits", action="store_true",
                   help="warn when positions leave the URDF limits")
    p.set_defaults(handler=_cmd_trajectory)

    p = sub.add_parser("gen-traj", help="write a sinusoidal excitation trajectory")
    p.add_argument("--dof", required=True, type=int)
    p.add_argument("--duration", required=True, type=float, help="seconds")
    p.add_argument("--amplitude", required=True, type=float, help="rad (or m)")
    p.add_argument("--frequency", required=True, type=float, help="Hz")
    p.add_argument("--output", required=True, help="trajectory CSV path")
    p.add_argument("--rate", type=float, default=100.0, help="sample rate, Hz")
    p.add_argument("--phase", type=float, default=0.0,
                   help="per-joint phase increment, rad")
    p.set_defaults(handler=_cmd_gen_traj)
    return parser


def _cmd_validate(args):
    model = load_urdf(args.urdf)
    if (args.root is None) != (args.tip is None):
        raise ConfigError("--root and --tip must be given together")
    print(f"model '{model.name}': {len(model.links)} links, "
          f"{len(model.joints)} joints, root link '{model.root_link}'")
    if args.root is None:
        return EXIT_OK
    chain = extract_chain(model, args.root, args.tip)
    print(f"chain {args.root} -> {args.tip}: dof {chain.dof}, "
          f"total mass {chain.total_mass!r} kg")
    diagnostics = validate_chain(chain)
    for diag in diagnostics:
        print(diag)
    if any(d.severity == "error" for d in diagnostics):
        return EXIT_MODEL
    return EXIT_OK


def _cmd_components(args):
    config = SolverConfig.from_file(args.config)
    solver = create_solver(config)
    q = args.q
    qd = args.qd if args.qd is not None else np.zeros(solver.dof)
    qdd = args.qdd if args.qdd is not None else np.zeros(solver.dof)
    components = solver.get_dynamic_components(q, qd)
    out = {
        "dof": solver.dof,
        "inertia": [list(row) for row in components.inertia],
        "coriolis": list(components.coriolis),
        "gravity": list(components.gravity),
        "friction": list(solver.get_friction_vector(qd)),
        "tau": list(solver.get_torques(q, qd, qdd)),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def _check_limits(chain, samples):
    log = logging.getLogger("dynsolve.cli")
    for j, joint in enumerate(chain.joints):
        values = np.array([s.q[j] for s in samples])
        outside = int(np.sum((values < joint.lower) | (values > joint.upper)))
        if outside:
            log.warning(
                "joint '%s': %d of %d samples outside position limits "
                "[%g, %g]", joint.name, outside, len(samples),
                joint.lower, joint.upper,
            )


def _cmd_trajectory(args):
    config = SolverConfig.from_file(args.config)
    solver = create_solver(config)
    data = load_trajectory(args.input, expected_dof=solver.dof,
                           differentiate=args.differentiate)
    samples = data.samples
    if data.has_measurements and data.units == "current":
        if config.drive_gains is None:
            raise MissingParamError(
                "trajectory measures currents; config must provide drive_gains"
            )
        samples = tuple(
            TrajectorySample(
                t=s.t, q=s.q, qd=s.qd, qdd=s.qdd,
                tau_measured=torques_from_currents(config.drive_gains,
                                                   s.tau_measured),
            )
            for s in samples
        )
    if args.check_limits:
        _check_limits(solver.chain, samples)
    records = compute_along_trajectory(solver, samples)
    report = None
    if data.has_measurements:
        report = compare_torques(records, samples)
    written = emit_report(report, records, args.output,
                          config_echo=config.echo())
    print(f"wrote {', '.join(written)} ({len(records)} samples)")
    if report is not None:
        rms = ", ".join(f"{v:.6g}" for v in report.per_joint_rms)
        print(f"per-joint torque RMS error: [{rms}]")
    return EXIT_OK


def _cmd_gen_traj(args):
    samples = generate_sinusoid(args.dof, args.duration, args.amplitude,
                                args.frequency, rate=args.rate,
                                phase_step=args.phase)
    write_trajectory_csv(args.output, samples)
    print(f"wrote {args.output} ({len(samples)} samples, dof {args.dof})")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DynsolveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for exceptions, code in _ERROR_CODES:
            if isinstance(exc, exceptions):
                return code
        return 1


if __name__ == "__main__":
    sys.exit(main())
