"""End-to-end helpers tying synthesis, IK, simulation and scoring together."""
from dataclasses import dataclass

import numpy as np

from .control import ExecutedTrajectory, SplineSampler, simulate_execution
from .evaluation import SpeedSource, VelocitySeries, align, snr_db, tcp_velocity
from .kinematics import UR3, ArmModel, JointTrajectory, path_to_joint_trajectory
from .manifest import MovementSpec
from .synthesis import (Box, TimedPath, fit_to_workspace, generate_target_points,
                        random_rotation, repeat_path, synthesize)


@dataclass(frozen=True)
class _Sampled:
    q: np.ndarray
    t: np.ndarray


@dataclass(frozen=True)
class MovementResult:
    path: TimedPath
    commanded: JointTrajectory
    executed: ExecutedTrajectory
    v_pc: VelocitySeries
    v_ur3: VelocitySeries
    report: object


def build_path(movement: MovementSpec, workspace: Box, seed_offset=0) -> TimedPath:
    """Target points -> profile synthesis -> workspace fit -> repetition."""
    seed = movement.seed + seed_offset
    spec = movement.profile_spec
    tps = generate_target_points(movement.n_points, movement.box, seed)
    path = synthesize(tps, movement.profile_kind, spec, movement.name)
    path = fit_to_workspace(path, workspace, random_rotation(seed))
    return repeat_path(path, spec.repetitions, spec)


def commanded_velocity(model: ArmModel, commanded: JointTrajectory, t_grid, smoothing_window=5):
    """TCP speed of the commanded spline sampled on ``t_grid``."""
    q, _ = SplineSampler(commanded)(np.asarray(t_grid, float))
    return tcp_velocity(model, _Sampled(q, np.asarray(t_grid, float)), smoothing_window,
                        SpeedSource.COMMANDED_PC)


def score(model: ArmModel, commanded: JointTrajectory, executed: ExecutedTrajectory,
          smoothing_window=5, name=""):
    """SNR of executed against commanded TCP speed, both seen through the same FK and smoothing."""
    v_ur3 = tcp_velocity(model, executed, smoothing_window, SpeedSource.EXECUTED_UR3)
    v_pc = commanded_velocity(model, commanded, executed.t, smoothing_window)
    v_pc, v_ur3 = align(v_pc, v_ur3, rate=1.0 / float(np.mean(np.diff(executed.t))))
    return snr_db(v_pc, v_ur3, name), v_pc, v_ur3


def run_movement(movement: MovementSpec, workspace: Box, gains, plant, model: ArmModel = UR3,
                 seed=0, smoothing_window=5) -> MovementResult:
    path = build_path(movement, workspace)
    commanded = path_to_joint_trajectory(model, path)
    executed = simulate_execution(commanded, gains, plant, seed, model.joint_limits)
    report, v_pc, v_ur3 = score(model, commanded, executed, smoothing_window, movement.name)
    return MovementResult(path, commanded, executed, v_pc, v_ur3, report)
