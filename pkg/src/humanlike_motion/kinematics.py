"""UR3 forward kinematics, geometric Jacobian and damped least-squares IK."""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import (InvalidParameterError, JointLimitError, NoConvergenceError,
                     PathSolveError, UnreachableTargetError)

# Universal Robots published DH table for the UR3 (CB-series), rows (a, alpha, d, theta_offset).
UR3_DH = (
    (0.0, math.pi / 2, 0.1519, 0.0),
    (-0.24365, 0.0, 0.0, 0.0),
    (-0.21325, 0.0, 0.0, 0.0),
    (0.0, math.pi / 2, 0.11235, 0.0),
    (0.0, -math.pi / 2, 0.08535, 0.0),
    (0.0, 0.0, 0.0819, 0.0),
)

# elbow-up configuration placing the TCP near (0.30, 0, 0.25) with the default tool orientation
UR3_HOME = (0.4826, -1.5437, -2.3401, -0.1037, 1.2364, 1.9256)


def rpy_matrix(roll, pitch, yaw):
    """``Rz(yaw) @ Ry(pitch) @ Rx(roll)`` (extrinsic x-y-z)."""
    return Rotation.from_euler("xyz", [roll, pitch, yaw]).as_matrix()


TOOL_RPY = (0.0, 0.75 * math.pi, 0.0)
TOOL_ORIENTATION = rpy_matrix(*TOOL_RPY)


@dataclass(frozen=True)
class ArmModel:
    dh_rows: tuple = UR3_DH
    joint_limits: tuple = ((-2 * math.pi, 2 * math.pi),) * 6
    max_reach: float = 0.5

    def __post_init__(self):
        rows = np.array(self.dh_rows, dtype=float)
        limits = np.array(self.joint_limits, dtype=float)
        if rows.shape != (6, 4):
            raise InvalidParameterError("need exactly 6 DH rows of (a, alpha, d, theta_offset)")
        if limits.shape != (6, 2) or np.any(limits[:, 0] >= limits[:, 1]):
            raise InvalidParameterError("joint limits must be 6 (min, max) pairs with min < max")
        if not self.max_reach > 0:
            raise InvalidParameterError("max_reach must be > 0")
        object.__setattr__(self, "dh_rows", tuple(map(tuple, rows)))
        object.__setattr__(self, "joint_limits", tuple(map(tuple, limits)))

    @property
    def shoulder(self):
        return np.array([0.0, 0.0, self.dh_rows[0][2]])

    @property
    def envelope_radius(self):
        """Reach measured from the shoulder, including the wrist/tool offsets."""
        return self.max_reach + abs(self.dh_rows[4][2]) + abs(self.dh_rows[5][2])

    def within_limits(self, q):
        lim = np.array(self.joint_limits)
        return bool(np.all(q >= lim[:, 0]) and np.all(q <= lim[:, 1]))


UR3 = ArmModel()


@dataclass(frozen=True)
class Pose:
    position: np.ndarray
    orientation: np.ndarray = field(default_factory=lambda: TOOL_ORIENTATION.copy())

    def __post_init__(self):
        p = np.array(self.position, dtype=float).reshape(3)
        R = np.array(self.orientation, dtype=float)
        if R.shape != (3, 3) or not np.allclose(R.T @ R, np.eye(3), atol=1e-9) \
                or abs(np.linalg.det(R) - 1) > 1e-9:
            raise InvalidParameterError("orientation must be a rotation matrix")
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "orientation", R)

    @property
    def matrix(self):
        T = np.eye(4)
        T[:3, :3] = self.orientation
        T[:3, 3] = self.position
        return T


@dataclass(frozen=True)
class JointTrajectory:
    q: np.ndarray   # (n, 6)
    t: np.ndarray   # (n,)
    label: str = ""

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        t = np.array(self.t, dtype=float)
        if q.ndim != 2 or q.shape[1] != 6 or t.shape != (len(q),):
            raise InvalidParameterError("q must be (n, 6) with n matching timestamps")
        if np.any(np.diff(t) <= 0):
            raise InvalidParameterError("timestamps must strictly increase")
        q.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "t", t)

    @property
    def samples(self):
        return np.column_stack([self.q, self.t])

    def __len__(self):
        return len(self.t)


def dh_transform(a, alpha, d, theta):
    ct, st = math.cos(theta), math.sin(theta)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array([
        [ct, -st * ca, st * sa, a * ct],
        [st, ct * ca, -ct * sa, a * st],
        [0.0, sa, ca, d],
        [0.0, 0.0, 0.0, 1.0],
    ])


def joint_frames(model: ArmModel, q):
    """Base frame followed by the frame after each joint: 7 homogeneous transforms."""
    T = np.eye(4)
    frames = [T]
    for (a, alpha, d, off), qi in zip(model.dh_rows, q):
        T = T @ dh_transform(a, alpha, d, qi + off)
        frames.append(T)
    return frames


def fk_matrix(model: ArmModel, q):
    return joint_frames(model, q)[-1]


def forward_kinematics(model: ArmModel, q) -> Pose:
    T = fk_matrix(model, np.asarray(q, float))
    return Pose(T[:3, 3], T[:3, :3])


def fk_positions(model: ArmModel, qs):
    """TCP positions for a batch of configurations ``qs`` (n, 6)."""
    qs = np.asarray(qs, float)
    n = len(qs)
    T = np.broadcast_to(np.eye(4), (n, 4, 4)).copy()
    for i, (a, alpha, d, off) in enumerate(model.dh_rows):
        th = qs[:, i] + off
        ct, st = np.cos(th), np.sin(th)
        ca, sa = math.cos(alpha), math.sin(alpha)
        A = np.zeros((n, 4, 4))
        A[:, 0, 0], A[:, 0, 1], A[:, 0, 2], A[:, 0, 3] = ct, -st * ca, st * sa, a * ct
        A[:, 1, 0], A[:, 1, 1], A[:, 1, 2], A[:, 1, 3] = st, ct * ca, -ct * sa, a * st
        A[:, 2, 1], A[:, 2, 2], A[:, 2, 3] = sa, ca, d
        A[:, 3, 3] = 1.0
        T = T @ A
    return T[:, :3, 3]


def jacobian(model: ArmModel, q):
    """Geometric Jacobian in the base frame; rows are (linear; angular) velocity."""
    frames = joint_frames(model, np.asarray(q, float))
    p = frames[-1][:3, 3]
    J = np.empty((6, 6))
    for i in range(6):
        z = frames[i][:3, 2]
        J[:3, i] = np.cross(z, p - frames[i][:3, 3])
        J[3:, i] = z
    return J


def pose_error(current: np.ndarray, target: Pose):
    """6-vector (position error; rotation-vector orientation error) from ``current`` 4x4 to ``target``."""
    ep = target.position - current[:3, 3]
    eo = Rotation.from_matrix(target.orientation @ current[:3, :3].T).as_rotvec()
    return np.concatenate([ep, eo])


def solve_ik(model: ArmModel, target: Pose, seed_q, damping=1e-3, max_step=0.2,
             tol=1e-8, max_iter=200):
    """Damped least-squares Newton iteration from ``seed_q``.

    Each step is ``J^T (J J^T + lam^2 I)^-1 e``, scaled down so that no
    joint moves more than ``max_step`` rad. ``lam`` is ``damping`` capped by
    the current error norm, so the damping fades out near the solution and a
    near-singular posture still converges. Stops once the pose-error norm
    drops below ``tol``.
    """
    q = np.array(seed_q, dtype=float)
    if not model.within_limits(q):
        raise JointLimitError(f"seed outside joint limits: {q}")
    if np.linalg.norm(target.position - model.shoulder) > model.envelope_radius:
        raise UnreachableTargetError(
            f"target {target.position} is beyond the {model.max_reach} m reach envelope")
    for _ in range(max_iter + 1):
        frames = joint_frames(model, q)
        e = pose_error(frames[-1], target)
        if np.linalg.norm(e) < tol:
            if not model.within_limits(q):
                raise JointLimitError(f"solution leaves joint limits: {q}")
            return q
        J = jacobian(model, q)
        lam = min(damping, np.linalg.norm(e))
        dq = J.T @ np.linalg.solve(J @ J.T + lam * lam * np.eye(6), e)
        biggest = np.max(np.abs(dq))
        if biggest > max_step:
            dq *= max_step / biggest
        q = q + dq
    raise NoConvergenceError(f"IK did not converge in {max_iter} iterations (|e| = {np.linalg.norm(e):.3g})")


def path_to_joint_trajectory(model: ArmModel, path, seed_q=UR3_HOME,
                             orientation=TOOL_ORIENTATION, **ik_options) -> JointTrajectory:
    """Solve IK sample by sample, seeding each solve with the previous solution."""
    qs = np.empty((len(path.t), 6))
    q = np.asarray(seed_q, float)
    for i, p in enumerate(path.xyz):
        try:
            q = solve_ik(model, Pose(p, orientation), q, **ik_options)
        except (UnreachableTargetError, NoConvergenceError, JointLimitError) as exc:
            raise PathSolveError(i, exc) from exc
        qs[i] = q
    return JointTrajectory(qs, path.t, getattr(path, "label", ""))
