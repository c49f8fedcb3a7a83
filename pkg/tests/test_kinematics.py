import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from humanlike_motion.errors import (InvalidParameterError, JointLimitError, PathSolveError,
                                     UnreachableTargetError)
from humanlike_motion.kinematics import (UR3, UR3_HOME, ArmModel, JointTrajectory, Pose,
                                         TOOL_ORIENTATION, fk_matrix, fk_positions,
                                         forward_kinematics, jacobian, path_to_joint_trajectory,
                                         rpy_matrix, solve_ik)
from humanlike_motion.manifest import WORKSPACE_CENTER, WORKSPACE_EXTENTS
from humanlike_motion.sigma_lognormal import StrokeTiming
from humanlike_motion.synthesis import (UNIT_BOX, Box, ProfileSpec, fit_to_workspace,
                                        generate_target_points, random_rotation,
                                        synthesize_human_like)

# zero-configuration TCP pose from composing Rz(theta) Tz(d) Tx(a) Rx(alpha) per row
ZERO_POSITION = np.array([-0.4569, -0.19425, 0.06655])
ZERO_ORIENTATION = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])


def orientation_error(R_a, R_b):
    return Rotation.from_matrix(R_a @ R_b.T).magnitude()


def fd_jacobian(q, h=1e-7):
    """Central differences of FK: linear rows from position, angular rows from dR R^T."""
    J = np.empty((6, 6))
    R = fk_matrix(UR3, q)[:3, :3]
    for i in range(6):
        dq = np.zeros(6)
        dq[i] = h
        Tp, Tm = fk_matrix(UR3, q + dq), fk_matrix(UR3, q - dq)
        J[:3, i] = (Tp[:3, 3] - Tm[:3, 3]) / (2 * h)
        W = (Tp[:3, :3] - Tm[:3, :3]) / (2 * h) @ R.T
        J[3:, i] = [W[2, 1], W[0, 2], W[1, 0]]
    return J


def test_zero_configuration_pose():
    pose = forward_kinematics(UR3, np.zeros(6))
    assert np.allclose(pose.position, ZERO_POSITION, atol=1e-12)
    assert np.allclose(pose.orientation, ZERO_ORIENTATION, atol=1e-12)


def test_base_joint_half_turn_negates_xy():
    rng = np.random.default_rng(1)
    q = rng.uniform(-np.pi, np.pi, 6)
    p = forward_kinematics(UR3, q).position
    q2 = q.copy()
    q2[0] += np.pi
    p2 = forward_kinematics(UR3, q2).position
    assert np.allclose(p2, [-p[0], -p[1], p[2]], atol=1e-12)


def test_reach_bound_on_random_configurations():
    rng = np.random.default_rng(2)
    qs = rng.uniform(-2 * np.pi, 2 * np.pi, (1000, 6))
    p = fk_positions(UR3, qs)
    d1, d5, d6 = UR3.dh_rows[0][2], UR3.dh_rows[4][2], UR3.dh_rows[5][2]
    assert np.all(np.linalg.norm(p, axis=1) <= 0.5 + d1 + d5 + d6)
    assert np.all(np.linalg.norm(p - UR3.shoulder, axis=1) <= UR3.envelope_radius)


def test_batched_fk_matches_single():
    rng = np.random.default_rng(3)
    qs = rng.uniform(-3, 3, (20, 6))
    assert np.allclose(fk_positions(UR3, qs), [fk_matrix(UR3, q)[:3, 3] for q in qs], atol=1e-14)


def test_jacobian_columns_structure():
    from humanlike_motion.kinematics import joint_frames
    q = np.array([0.3, -1.2, 1.1, -0.4, 0.9, 0.2])
    frames = joint_frames(UR3, q)
    J = jacobian(UR3, q)
    p = frames[-1][:3, 3]
    for i in range(6):
        z, o = frames[i][:3, 2], frames[i][:3, 3]
        assert np.allclose(J[:, i], np.concatenate([np.cross(z, p - o), z]))


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(4)
    worst = max(np.max(np.abs(jacobian(UR3, q) - fd_jacobian(q)))
                for q in rng.uniform(-np.pi, np.pi, (100, 6)))
    assert worst < 1e-6


def test_jacobian_singular_when_stretched():
    s = np.linalg.svd(jacobian(UR3, np.zeros(6)), compute_uv=False)
    assert s.min() < 1e-6


def test_tool_orientation_is_rotation():
    R = rpy_matrix(0.0, 0.75 * math.pi, 0.0)
    assert np.allclose(R @ R.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-12)
    c, s = math.cos(0.75 * math.pi), math.sin(0.75 * math.pi)
    assert np.allclose(R, [[c, 0, s], [0, 1, 0], [-s, 0, c]], atol=1e-15)
    assert np.array_equal(R, TOOL_ORIENTATION)


def test_rpy_convention_extrinsic_xyz():
    r, p, y = 0.3, -0.7, 1.1
    Rx = Rotation.from_rotvec([r, 0, 0]).as_matrix()
    Ry = Rotation.from_rotvec([0, p, 0]).as_matrix()
    Rz = Rotation.from_rotvec([0, 0, y]).as_matrix()
    assert np.allclose(rpy_matrix(r, p, y), Rz @ Ry @ Rx, atol=1e-14)


def test_ik_fixpoint():
    q = np.array(UR3_HOME)
    assert np.array_equal(solve_ik(UR3, forward_kinematics(UR3, q), q), q)


def test_ik_round_trip_from_perturbed_seed():
    rng = np.random.default_rng(5)
    for _ in range(100):
        q_star = rng.uniform(-np.pi, np.pi, 6)
        target = forward_kinematics(UR3, q_star)
        q = solve_ik(UR3, target, q_star + rng.uniform(-0.05, 0.05, 6))
        got = forward_kinematics(UR3, q)
        assert np.linalg.norm(got.position - target.position) < 1e-6
        assert orientation_error(got.orientation, target.orientation) < 1e-6


def test_ik_unreachable():
    with pytest.raises(UnreachableTargetError):
        solve_ik(UR3, Pose([1.0, 0.0, 0.0]), UR3_HOME)


def test_ik_rejects_seed_outside_limits():
    model = ArmModel(joint_limits=((-1, 1),) * 6)
    with pytest.raises(JointLimitError):
        solve_ik(model, Pose([0.3, 0.0, 0.25]), np.full(6, 2.0))


def test_model_validation():
    with pytest.raises(InvalidParameterError):
        ArmModel(dh_rows=UR3.dh_rows[:5])
    with pytest.raises(InvalidParameterError):
        ArmModel(joint_limits=((1, -1),) * 6)
    with pytest.raises(InvalidParameterError):
        Pose([0, 0, 0], np.diag([1.0, 1.0, -1.0]))


@pytest.fixture(scope="module")
def workspace_path():
    spec = ProfileSpec(StrokeTiming(1.0, 0.5))
    path = synthesize_human_like(generate_target_points(5, UNIT_BOX, 13), spec)
    box = Box.centered(WORKSPACE_CENTER, WORKSPACE_EXTENTS)
    return fit_to_workspace(path, box, random_rotation(13))


def test_path_to_joint_trajectory(workspace_path):
    traj = path_to_joint_trajectory(UR3, workspace_path)
    assert len(traj) == len(workspace_path)
    assert np.array_equal(traj.t, workspace_path.t)
    for q, p in zip(traj.q, workspace_path.xyz):
        T = fk_matrix(UR3, q)
        assert np.linalg.norm(T[:3, 3] - p) < 1e-6
        assert orientation_error(T[:3, :3], TOOL_ORIENTATION) < 1e-6
    assert np.max(np.abs(np.diff(traj.q, axis=0))) < 0.2


def test_path_failure_reports_index(workspace_path):
    from humanlike_motion.synthesis import TimedPath
    bad = workspace_path.xyz.copy()
    bad[7] = [1.0, 0.0, 0.2]
    with pytest.raises(PathSolveError) as info:
        path_to_joint_trajectory(UR3, TimedPath(bad, workspace_path.t))
    assert info.value.index == 7
    assert isinstance(info.value.cause, UnreachableTargetError)


def test_joint_trajectory_validation():
    with pytest.raises(InvalidParameterError):
        JointTrajectory(np.zeros((3, 6)), [0.0, 0.0, 1.0])
