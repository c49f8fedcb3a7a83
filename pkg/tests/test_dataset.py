"""Invariants checked over the ten default movements."""
import numpy as np

from humanlike_motion.control import IDEAL_PLANT, ControllerGains, PlantParams, simulate_execution, spline_interpolate
from humanlike_motion.kinematics import UR3, jacobian
from humanlike_motion.synthesis import sampled_speed


def final_second_error(traj, ex):
    q_des, _ = spline_interpolate(traj)(ex.t)
    tail = ex.t >= ex.t[-1] - 1.0
    return float(np.mean(np.abs(q_des[tail] - ex.q[tail])))


def test_joint_steps_bounded_by_conditioning(dataset):
    for name, (path, traj) in dataset.items():
        _, v = sampled_speed(path)
        sv_min = min(np.linalg.svd(jacobian(UR3, q), compute_uv=False).min() for q in traj.q[::10])
        dt = np.diff(traj.t).max()
        bound = v.max() / sv_min * dt * 2
        assert np.max(np.abs(np.diff(traj.q, axis=0))) <= bound, name


def test_ideal_plant_converges(dataset):
    for name, (_, traj) in dataset.items():
        ex = simulate_execution(traj, ControllerGains(10.0, 5.0), IDEAL_PLANT)
        assert final_second_error(traj, ex) < 1e-3, name


def test_higher_kp_does_not_hurt(dataset):
    plant = PlantParams(lag_tau=0.02, velocity_noise_std=0.0)
    for name, (_, traj) in dataset.items():
        low = final_second_error(traj, simulate_execution(traj, ControllerGains(5.0, 5.0), plant))
        high = final_second_error(traj, simulate_execution(traj, ControllerGains(20.0, 5.0), plant))
        assert high <= low, name
