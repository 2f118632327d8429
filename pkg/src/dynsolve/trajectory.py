"""Trajectory files, torque sweeps and comparison reports.

Trajectory CSV format (UTF-8, comma-separated, decimal point):

    # optional comments; an optional "# units=torque|current" directive
    # declares what the measured columns contain (default: torque)
    t,q0,..,q{n-1},qd0,..,qd{n-1},qdd0,..,qdd{n-1}[,tau0,..,tau{n-1}]
    0.0,...

Timestamps must be strictly increasing. The qdd block may be omitted
when the caller asks for numerical differentiation of qd. The tau block
is optional; when present every sample carries measured values.

Reports are written as a plot-ready per-sample CSV plus a JSON summary;
identical inputs produce byte-identical files.
"""

import csv
import json
import re
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import (
    DimensionError,
    DynsolveError,
    FormatError,
    IoError,
    MissingMeasurementError,
    NonMonotonicTimeError,
)

_UNITS_RE = re.compile(r"units\s*=\s*(torque|current)\s*$")


@dataclass(frozen=True)
class TrajectorySample:
    """One timestamped joint state, optionally with measured torques."""

    t: float
    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray
    tau_measured: np.ndarray | None = None


@dataclass(frozen=True)
class TrajectoryData:
    """Loaded trajectory plus the measured-column unit tag."""

    samples: tuple
    units: str = "torque"

    @property
    def dof(self) -> int:
        return len(self.samples[0].q) if self.samples else 0

    @property
    def has_measurements(self) -> bool:
        return bool(self.samples) and self.samples[0].tau_measured is not None


def _expected_header(dof: int, with_qdd: bool, with_tau: bool):
    names = ["t"]
    names += [f"q{i}" for i in range(dof)]
    names += [f"qd{i}" for i in range(dof)]
    if with_qdd:
        names += [f"qdd{i}" for i in range(dof)]
    if with_tau:
        names += [f"tau{i}" for i in range(dof)]
    return names


def _parse_header(fields):
    """Infer (dof, with_qdd, with_tau) from the header row."""
    if not fields or fields[0] != "t":
        raise FormatError("header must start with column 't'")
    dof = sum(1 for name in fields if re.fullmatch(r"q\d+", name))
    if dof == 0:
        raise FormatError("header has no q columns")
    for with_qdd in (True, False):
        for with_tau in (True, False):
            if fields == _expected_header(dof, with_qdd, with_tau):
                return dof, with_qdd, with_tau
    raise FormatError(
        "header must be t,q0..,qd0..[,qdd0..][,tau0..] with consistent counts"
    )


def load_trajectory(path, expected_dof=None, differentiate=False) -> TrajectoryData:
    """Read a trajectory CSV.

    Raises FormatError (with the offending data-row number) for malformed
    content, DimensionError when the file's dof differs from
    ``expected_dof``, and NonMonotonicTimeError when timestamps do not
    strictly increase. Missing qdd columns are tolerated only with
    ``differentiate=True``, which fills them by central differences of qd
    (documented as lower fidelity than recorded accelerations).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoError(f"cannot read trajectory '{path}': {exc}") from exc

    units = "torque"
    header = None
    rows = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _UNITS_RE.search(stripped[1:].strip())
            if match:
                units = match.group(1)
            continue
        fields = [f.strip() for f in stripped.split(",")]
        if header is None:
            header = fields
        else:
            rows.append(fields)
    if header is None:
        raise FormatError(f"'{path}' has no header row")
    dof, with_qdd, with_tau = _parse_header(header)
    if expected_dof is not None and dof != expected_dof:
        raise DimensionError(
            f"trajectory has {dof} joints but {expected_dof} were expected"
        )
    if not rows:
        raise FormatError(f"'{path}' has no data rows")
    if not with_qdd and not differentiate:
        raise FormatError(
            "trajectory lacks qdd columns; re-record them or enable "
            "differentiation of qd"
        )

    data = np.empty((len(rows), len(header)))
    for i, fields in enumerate(rows):
        row_no = i + 1
        if len(fields) != len(header):
            raise FormatError(
                f"row {row_no}: expected {len(header)} columns, got {len(fields)}"
            )
        try:
            data[i] = [float(f) for f in fields]
        except ValueError as exc:
            raise FormatError(f"row {row_no}: {exc}") from exc
        if not np.isfinite(data[i]).all():
            raise FormatError(f"row {row_no}: non-finite value")
        if i > 0 and data[i, 0] <= data[i - 1, 0]:
            raise NonMonotonicTimeError(
                f"row {row_no}: t={data[i, 0]!r} does not increase over "
                f"t={data[i - 1, 0]!r}"
            )

    t = data[:, 0]
    q = data[:, 1:1 + dof]
    qd = data[:, 1 + dof:1 + 2 * dof]
    col = 1 + 2 * dof
    if with_qdd:
        qdd = data[:, col:col + dof]
        col += dof
    else:
        qdd = _central_differences(t, qd)
    tau = data[:, col:col + dof] if with_tau else None

    samples = tuple(
        TrajectorySample(
            t=float(t[i]),
            q=q[i].copy(),
            qd=qd[i].copy(),
            qdd=qdd[i].copy(),
            tau_measured=tau[i].copy() if tau is not None else None,
        )
        for i in range(len(rows))
    )
    return TrajectoryData(samples=samples, units=units)


def _central_differences(t, qd) -> np.ndarray:
    """d(qd)/dt with one-sided differences at the ends."""
    if len(t) < 2:
        raise FormatError("need at least 2 samples to differentiate qd")
    qdd = np.empty_like(qd)
    qdd[0] = (qd[1] - qd[0]) / (t[1] - t[0])
    qdd[-1] = (qd[-1] - qd[-2]) / (t[-1] - t[-2])
    if len(t) > 2:
        qdd[1:-1] = (qd[2:] - qd[:-2]) / (t[2:, None] - t[:-2, None])
    return qdd


def generate_sinusoid(dof, duration, amplitude, frequency, rate=100.0,
                      phase_step=0.0):
    """Per-joint sinusoidal excitation samples with analytic derivatives.

    q_i(t) = A sin(2 pi f t + i * phase_step), sampled at ``rate`` Hz
    from t = 0 through ``duration`` inclusive.
    """
    if dof < 1 or duration <= 0 or rate <= 0:
        raise DimensionError("dof >= 1, duration > 0 and rate > 0 required")
    omega = 2.0 * np.pi * frequency
    count = int(round(duration * rate)) + 1
    phases = np.arange(dof) * phase_step
    samples = []
    for k in range(count):
        t = k / rate
        arg = omega * t + phases
        samples.append(
            TrajectorySample(
                t=t,
                q=amplitude * np.sin(arg),
                qd=amplitude * omega * np.cos(arg),
                qdd=-amplitude * omega * omega * np.sin(arg),
            )
        )
    return samples


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trajectory_csv(path, samples, units=None) -> None:
    """Write samples in the trajectory CSV format (see module docstring)."""
    if not samples:
        raise ValueError("refusing to write an empty trajectory")
    dof = len(samples[0].q)
    with_tau = samples[0].tau_measured is not None
    lines = []
    if units is not None:
        lines.append(f"# units={units}")
    lines.append(",".join(_expected_header(dof, True, with_tau)))
    for s in samples:
        row = [_fmt(s.t)]
        row += [_fmt(v) for v in s.q]
        row += [_fmt(v) for v in s.qd]
        row += [_fmt(v) for v in s.qdd]
        if with_tau:
            row += [_fmt(v) for v in s.tau_measured]
        lines.append(",".join(row))
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write trajectory '{path}': {exc}") from exc


@dataclass(frozen=True)
class ComputedRecord:
    """Dynamics outputs at one trajectory sample."""

    t: float
    tau: np.ndarray
    inertia_diag: np.ndarray
    coriolis: np.ndarray
    gravity: np.ndarray
    friction: np.ndarray
    tau_measured: np.ndarray | None = None


@dataclass(frozen=True)
class ComparisonReport:
    """Per-joint error statistics of computed vs measured torques."""

    per_joint_rms: np.ndarray
    per_joint_max_abs: np.ndarray
    sample_count: int


def compute_along_trajectory(solver, samples):
    """Evaluate the solver at every sample.

    Output order matches input order; any solver error is re-raised with
    the sample index attached.
    """
    records = []
    for i, s in enumerate(samples):
        try:
            components = solver.get_dynamic_components(s.q, s.qd)
            records.append(
                ComputedRecord(
                    t=s.t,
                    tau=solver.get_torques(s.q, s.qd, s.qdd),
                    inertia_diag=np.diag(components.inertia).copy(),
                    coriolis=components.coriolis,
                    gravity=components.gravity,
                    friction=solver.get_friction_vector(s.qd),
                    tau_measured=s.tau_measured,
                )
            )
        except DynsolveError as exc:
            raise type(exc)(f"sample {i} (t={s.t!r}): {exc}") from exc
    return records


def compare_torques(records, samples) -> ComparisonReport:
    """Per-joint RMS and max-abs of (computed - measured) torques."""
    if not samples or any(s.tau_measured is None for s in samples):
        raise MissingMeasurementError(
            "trajectory carries no measured torques to compare against"
        )
    if len(records) != len(samples):
        raise DimensionError(
            f"{len(records)} computed records vs {len(samples)} samples"
        )
    errors = np.array([r.tau - s.tau_measured for r, s in zip(records, samples)])
    return ComparisonReport(
        per_joint_rms=np.sqrt(np.mean(errors**2, axis=0)),
        per_joint_max_abs=np.max(np.abs(errors), axis=0),
        sample_count=len(samples),
    )


def emit_report(report, records, out_path, fmt="both", config_echo=None):
    """Write the per-sample CSV and/or JSON summary for a computed run.

    ``out_path`` is a base path: '<out_path>.csv' and '<out_path>.json'
    are produced (subset selected by fmt: 'csv', 'json' or 'both').
    ``report`` may be None when the trajectory had no measurements.
    Returns the list of paths written.
    """
    if not records:
        raise ValueError("no records to report")
    if fmt not in ("csv", "json", "both"):
        raise ValueError(f"fmt must be 'csv', 'json' or 'both', got {fmt!r}")
    dof = len(records[0].tau)
    with_measured = records[0].tau_measured is not None
    out_path = str(out_path)
    written = []

    if fmt in ("csv", "both"):
        header = ["t"]
        header += [f"tau_c{i}" for i in range(dof)]
        if with_measured:
            header += [f"tau_m{i}" for i in range(dof)]
            header += [f"err{i}" for i in range(dof)]
        header += [f"Hdiag{i}" for i in range(dof)]
        header += [f"c{i}" for i in range(dof)]
        header += [f"g{i}" for i in range(dof)]
        header += [f"f{i}" for i in range(dof)]
        csv_path = out_path + ".csv"
        try:
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                for r in records:
                    row = [_fmt(r.t)]
                    row += [_fmt(v) for v in r.tau]
                    if with_measured:
                        row += [_fmt(v) for v in r.tau_measured]
                        row += [_fmt(v) for v in (r.tau - r.tau_measured)]
                    row += [_fmt(v) for v in r.inertia_diag]
                    row += [_fmt(v) for v in r.coriolis]
                    row += [_fmt(v) for v in r.gravity]
                    row += [_fmt(v) for v in r.friction]
                    writer.writerow(row)
        except OSError as exc:
            raise IoError(f"cannot write report '{csv_path}': {exc}") from exc
        written.append(csv_path)

    if fmt in ("json", "both"):
        summary = {
            "tool": "dynsolve",
            "version": __version__,
            "sample_count": len(records),
            "dof": dof,
            "metrics": None,
            "config": config_echo,
        }
        if report is not None:
            summary["metrics"] = {
                "per_joint_rms": list(report.per_joint_rms),
                "per_joint_max_abs": list(report.per_joint_max_abs),
            }
        json_path = out_path + ".json"
        try:
            with open(json_path, "w", encoding="utf-8", newline="") as fh:
                json.dump(summary, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            raise IoError(f"cannot write report '{json_path}': {exc}") from exc
        written.append(json_path)
    return written
