"""Human-like (lognormal) and robotic-like (trapezoidal) motion for a simulated UR3."""
from .control import (ControllerGains, ExecutedTrajectory, IDEAL_PLANT, PlantParams,
                      pi_ff_step, simulate_execution, spline_interpolate)
from .errors import (DegenerateParameterError, InvalidParameterError, JointLimitError,
                     MotionError, NoConvergenceError, PathSolveError, SimulationFault,
                     UndefinedSnrError, UnreachableTargetError)
from .evaluation import SnrReport, VelocitySeries, align, render_table, snr_db, tcp_velocity
from .kinematics import (UR3, ArmModel, JointTrajectory, Pose, TOOL_ORIENTATION,
                         forward_kinematics, jacobian, path_to_joint_trajectory, rpy_matrix,
                         solve_ik)
from .manifest import ExperimentManifest, MovementSpec, default_manifest
from .sigma_lognormal import (StrokeParams, StrokeTiming, distance_traveled,
                              estimate_stroke_params, lognormal_value, stroke_angle,
                              stroke_speed, stroke_velocity, sum_velocity)
from .synthesis import (Box, ProfileKind, ProfileSpec, TargetPointSet, TimedPath,
                        fit_to_workspace, generate_target_points, repeat_path,
                        synthesize_human_like, synthesize_robotic_like)

__version__ = "0.1.0"
