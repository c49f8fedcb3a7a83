"""Simulated execution: cubic-spline reference, PI feed-forward joint velocity
control and a first-order-lag velocity plant stepped at a fixed rate."""
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidParameterError, SimulationFault
from .kinematics import JointTrajectory

INTEGRATOR_CLAMP = 1.0  # rad*s per joint


def _per_joint(x, name):
    arr = np.broadcast_to(np.asarray(x, dtype=float), (6,)).copy()
    if np.any(arr < 0):
        raise InvalidParameterError(f"{name} must be >= 0")
    return arr


@dataclass
class ControllerGains:
    kp: np.ndarray = 10.0
    ki: np.ndarray = 5.0
    integrator_state: np.ndarray = field(default_factory=lambda: np.zeros(6))

    def __post_init__(self):
        self.kp = _per_joint(self.kp, "kp")
        self.ki = _per_joint(self.ki, "ki")
        self.integrator_state = np.array(self.integrator_state, dtype=float).reshape(6)

    def reset(self):
        self.integrator_state = np.zeros(6)


@dataclass(frozen=True)
class PlantParams:
    lag_tau: float = 0.02
    velocity_noise_std: float = 0.002
    control_rate: float = 125.0

    def __post_init__(self):
        if self.lag_tau < 0 or self.velocity_noise_std < 0 or not self.control_rate > 0:
            raise InvalidParameterError("need lag_tau >= 0, noise >= 0, control_rate > 0")

    @property
    def dt(self):
        return 1.0 / self.control_rate


IDEAL_PLANT = PlantParams(lag_tau=0.0, velocity_noise_std=0.0)


@dataclass(frozen=True)
class ExecutedTrajectory:
    q: np.ndarray      # (n, 6) measured positions
    qdot: np.ndarray   # (n, 6) measured velocities
    t: np.ndarray
    source_label: str = ""

    def __post_init__(self):
        for name in ("q", "qdot", "t"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.q.shape != self.qdot.shape or self.q.shape != (len(self.t), 6):
            raise InvalidParameterError("q and qdot must be (n, 6) matching t")
        if np.any(np.diff(self.t) <= 0):
            raise InvalidParameterError("timestamps must strictly increase")

    @property
    def samples(self):
        return np.column_stack([self.q, self.qdot, self.t])

    def __len__(self):
        return len(self.t)


class SplineSampler:
    """Natural cubic spline through every knot of a JointTrajectory.

    Outside the knot range the endpoint positions are held and the velocity is zero.
    """

    def __init__(self, traj: JointTrajectory):
        if len(traj.t) < 2:
            raise InvalidParameterError("spline needs at least 2 samples")
        self.t0, self.t1 = float(traj.t[0]), float(traj.t[-1])
        self._q = CubicSpline(traj.t, traj.q, axis=0, bc_type="natural")
        self._qd = self._q.derivative()

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        tc = np.clip(t, self.t0, self.t1)
        q = self._q(tc)
        qd = self._qd(tc)
        outside = (t < self.t0) | (t > self.t1)
        if np.any(outside):
            qd = np.where(outside[..., None] if np.ndim(t) else outside, 0.0, qd)
        return q, qd


def spline_interpolate(traj: JointTrajectory) -> SplineSampler:
    return SplineSampler(traj)


def pi_ff_step(gains: ControllerGains, q_des, qdot_des, q_meas, dt):
    """One PI feed-forward update; advances ``gains.integrator_state`` in place.

    command = qdot_des + kp*e + ki*integral(e), with the integral taken
    after adding ``e*dt`` (explicit Euler) and clamped per joint.
    """
    if not dt > 0:
        raise InvalidParameterError("dt must be > 0")
    e = np.asarray(q_des, float) - np.asarray(q_meas, float)
    gains.integrator_state = np.clip(gains.integrator_state + e * dt,
                                     -INTEGRATOR_CLAMP, INTEGRATOR_CLAMP)
    return np.asarray(qdot_des, float) + gains.kp * e + gains.ki * gains.integrator_state


def simulate_execution(traj: JointTrajectory, gains: ControllerGains = None,
                       plant: PlantParams = PlantParams(), seed=0,
                       joint_limits=None) -> ExecutedTrajectory:
    """Run the control loop over ``[traj.t[0], traj.t[-1]]`` at ``plant.control_rate``.

    The robot starts at rest on the first knot. Each step records the
    measured state, then: spline sample -> PI-FF command -> first-order lag
    plus Gaussian velocity noise -> Euler position update.
    """
    gains = ControllerGains() if gains is None else gains
    gains.reset()
    sampler = SplineSampler(traj)
    dt = plant.dt
    n = int(np.floor((sampler.t1 - sampler.t0) * plant.control_rate + 1e-9)) + 1
    times = sampler.t0 + np.arange(n) * dt
    q_ref, _ = sampler(times)
    # feed-forward velocity held over [t_k, t_k + dt]: sample it mid-interval
    _, qd_ref = sampler(times + dt / 2)
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, plant.velocity_noise_std, size=(n, 6)) \
        if plant.velocity_noise_std > 0 else np.zeros((n, 6))
    lim = None if joint_limits is None else np.asarray(joint_limits, float)
    alpha = 1.0 if plant.lag_tau == 0 else min(1.0, dt / plant.lag_tau)

    q = q_ref[0].copy()
    qd = np.zeros(6)
    qs = np.empty((n, 6))
    qds = np.empty((n, 6))
    for k in range(n):
        if lim is not None and (np.any(q < lim[:, 0]) or np.any(q > lim[:, 1])):
            raise SimulationFault(k, f"joint limit violated: {q}")
        if not np.all(np.isfinite(q)):
            raise SimulationFault(k, "state diverged")
        qs[k] = q
        qds[k] = qd
        cmd = pi_ff_step(gains, q_ref[k], qd_ref[k], q, dt)
        qd = qd + alpha * (cmd - qd) + noise[k]
        q = q + dt * qd
    return ExecutedTrajectory(qs, qds, times, traj.label)
