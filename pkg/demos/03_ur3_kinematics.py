#!/usr/bin/env python
"""03_ur3_kinematics.py

Forward kinematics, the Jacobian, and IK along a synthesized path with the
tool held at RPY(0, 3/4 pi, 0).
"""
import numpy as np

from humanlike_motion import (UR3, Box, ProfileSpec, StrokeTiming, TOOL_ORIENTATION,
                              fit_to_workspace, forward_kinematics, generate_target_points,
                              jacobian, path_to_joint_trajectory, synthesize_human_like)
from humanlike_motion.kinematics import UR3_HOME

pose = forward_kinematics(UR3, UR3_HOME)
print("home TCP position:", np.round(pose.position, 4))
print("home orientation matches tool orientation:", np.allclose(pose.orientation, TOOL_ORIENTATION, atol=1e-3))

print("smallest singular value at zero pose:",
      np.linalg.svd(jacobian(UR3, np.zeros(6)), compute_uv=False).min())

tps = generate_target_points(4, Box((0, 0, 0), (1, 1, 1)), seed=1)
path = synthesize_human_like(tps, ProfileSpec(StrokeTiming(1.0, 0.5)))
path = fit_to_workspace(path, Box.centered((0.30, 0.0, 0.25), (0.15, 0.15, 0.15)))

traj = path_to_joint_trajectory(UR3, path)
steps = np.abs(np.diff(traj.q, axis=0)).max(axis=0)
print("largest per-sample joint step [rad]:", np.round(steps, 4))
errs = [np.linalg.norm(forward_kinematics(UR3, q).position - p) for q, p in zip(traj.q, path.xyz)]
print(f"worst FK reproduction error: {max(errs):.2e} m")
