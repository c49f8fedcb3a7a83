"""CSV serialisation for paths, joint trajectories, executions and reports."""
import csv
import math
from pathlib import Path

import numpy as np

from .control import ExecutedTrajectory
from .errors import InvalidParameterError
from .evaluation import SnrReport
from .kinematics import JointTrajectory
from .synthesis import ProfileKind, TimedPath

FLOAT_FMT = "%.12g"

PATH_HEADER = ["x", "y", "z", "t"]
JOINT_HEADER = [f"q{i}" for i in range(1, 7)] + ["t"]
EXEC_HEADER = [f"q{i}" for i in range(1, 7)] + [f"qd{i}" for i in range(1, 7)] + ["t"]
REPORT_HEADER = ["name", "snr_db", "signal_power", "noise_power"]
PLOT_HEADER = ["t", "v_pc", "v_ur3"]


def _write(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        np.savetxt(fh, np.asarray(rows, float), fmt=FLOAT_FMT, delimiter=",")


def _read(path, header):
    path = Path(path)
    with open(path) as fh:
        found = fh.readline().strip().split(",")
    if found != header:
        raise InvalidParameterError(f"{path}: expected header {','.join(header)}, got {','.join(found)}")
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def kind_from_name(name):
    return ProfileKind.ROBOTIC_LIKE if name.startswith("uniform") else ProfileKind.HUMAN_LIKE


def write_timed_path(path: TimedPath, filename):
    _write(filename, PATH_HEADER, path.samples)


def read_timed_path(filename, label=None, profile_kind=None) -> TimedPath:
    data = _read(filename, PATH_HEADER)
    label = Path(filename).stem if label is None else label
    kind = kind_from_name(label) if profile_kind is None else profile_kind
    return TimedPath(data[:, :3], data[:, 3], label, kind)


def write_joint_trajectory(traj: JointTrajectory, filename):
    _write(filename, JOINT_HEADER, traj.samples)


def read_joint_trajectory(filename) -> JointTrajectory:
    data = _read(filename, JOINT_HEADER)
    return JointTrajectory(data[:, :6], data[:, 6], Path(filename).stem)


def write_executed(traj: ExecutedTrajectory, filename):
    _write(filename, EXEC_HEADER, traj.samples)


def read_executed(filename) -> ExecutedTrajectory:
    data = _read(filename, EXEC_HEADER)
    return ExecutedTrajectory(data[:, :6], data[:, 6:12], data[:, 12], Path(filename).stem)


def write_plot_data(t, v_pc, v_ur3, filename):
    _write(filename, PLOT_HEADER, np.column_stack([t, v_pc, v_ur3]))


def write_reports(reports, filename):
    filename = Path(filename)
    filename.parent.mkdir(parents=True, exist_ok=True)
    with open(filename, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for r in reports:
            snr = "inf" if r.is_infinite else FLOAT_FMT % r.snr_db
            w.writerow([r.movement_name, snr, FLOAT_FMT % r.signal_power, FLOAT_FMT % r.noise_power])


def read_reports(filename):
    with open(filename, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [SnrReport(r["name"], math.inf if r["snr_db"] == "inf" else float(r["snr_db"]),
                      float(r["signal_power"]), float(r["noise_power"])) for r in rows]
