#!/usr/bin/env python
"""02_human_vs_robotic_profiles.py

The same five random target points traversed twice: once with a bell per
stroke (human-like), once with trapezoids (robotic-like). Then the
human-like path is rotated, shrunk into the robot workspace and repeated.
"""
import numpy as np

from humanlike_motion import (Box, ProfileSpec, StrokeTiming, fit_to_workspace,
                              generate_target_points, repeat_path, synthesize_human_like,
                              synthesize_robotic_like)
from humanlike_motion.synthesis import count_local_maxima, random_rotation, sampled_speed

tps = generate_target_points(5, Box((0, 0, 0), (1, 1, 1)), seed=4)
spec = ProfileSpec(StrokeTiming(1.0, 0.5))

human = synthesize_human_like(tps, spec, "lognorm_5_1")
robot = synthesize_robotic_like(tps, spec, "uniform_5_1")
print("durations:", human.duration, robot.duration)

t_h, v_h = sampled_speed(human)
t_r, v_r = sampled_speed(robot)
print("speed maxima (human-like):", count_local_maxima(v_h))
mid = [np.searchsorted(t_r, j + 0.5) for j in range(4)]
print("plateau speed per stroke (robotic-like):", np.round(v_r[mid], 4))

workspace = Box.centered((0.30, 0.0, 0.25), (0.15, 0.15, 0.15))
fitted = fit_to_workspace(human, workspace, random_rotation(4))
_, v_f = sampled_speed(fitted)
print(f"workspace scale factor: {v_f.max() / v_h.max():.4f}")

repeated = repeat_path(fitted, 3, spec)
print(f"repeated x3: {len(repeated)} samples over {repeated.duration:.2f} s")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(t_h, v_h, label="human-like")
    ax.plot(t_r, v_r, label="robotic-like")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("speed [m/s]")
    ax.legend()
    fig.savefig("profiles.png", dpi=120)
    print("wrote profiles.png")
