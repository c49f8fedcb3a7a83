#!/usr/bin/env python
"""01_lognormal_stroke.py

A single lognormal stroke: estimate its parameters from a length and a
timing, then look at speed, traveled distance and direction over time.
"""
import numpy as np

from humanlike_motion import (StrokeParams, StrokeTiming, distance_traveled,
                              estimate_stroke_params, stroke_speed, sum_velocity)

# a 10 cm stroke lasting 0.1 s whose speed peaks halfway through
timing = StrokeTiming(duration=0.1, peak_offset=0.05)
D, mu, sigma = estimate_stroke_params(0.10, 0.0, timing)
print(f"D = {D:.3f} m   mu = {mu:.5f}   sigma = {sigma:.5f}")

stroke = StrokeParams(D, 0.0, mu, sigma, angle_start_theta_s=0.0, angle_end_theta_e=np.pi / 3)
t = np.linspace(0.0, 0.15, 301)
v = stroke_speed(t, stroke)
print(f"peak speed {v.max():.3f} m/s at t = {t[np.argmax(v)]:.4f} s")
print(f"distance at stroke end: {distance_traveled(timing.duration, stroke):.6f} m")

# two strokes overlap into one smooth planar velocity
second = StrokeParams(0.05, 0.06, mu, sigma, np.pi / 3, np.pi)
vxy = sum_velocity(t, [stroke, second])
print("speed of the sum at a few instants:", np.round(np.linalg.norm(vxy[::60], axis=1), 4))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(t, v, label="single stroke")
    ax.plot(t, np.linalg.norm(vxy, axis=1), label="two strokes")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("speed [m/s]")
    ax.legend()
    fig.savefig("lognormal_stroke.png", dpi=120)
    print("wrote lognormal_stroke.png")
