#!/usr/bin/env python
"""04_simulated_execution_snr.py

Run the ten default movements through IK, the PI feed-forward loop and a
lagged, noisy plant, then score each one by SNR of TCP speed.

The same thing from the shell:  humanlike-motion run-all --out out/
"""
from humanlike_motion import UR3, default_manifest, render_table
from humanlike_motion.control import IDEAL_PLANT
from humanlike_motion.pipeline import run_movement

manifest = default_manifest()
gains, plant = manifest.control.gains(), manifest.control.plant()

reports = []
for i, movement in enumerate(manifest.movements):
    result = run_movement(movement, manifest.workspace, gains, plant, UR3, seed=i)
    reports.append(result.report)
print(render_table(reports))

# an ideal plant (no lag, no noise) tracks almost perfectly
ideal = run_movement(manifest.movements[5], manifest.workspace, gains, IDEAL_PLANT, UR3)
print(f"\n{ideal.report.movement_name} with an ideal plant: {ideal.report.snr_db:.1f} dB")
