"""TCP speed extraction and SNR scoring of executed against commanded motion."""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import InvalidParameterError, UndefinedSnrError
from .kinematics import ArmModel, fk_positions

EVAL_RATE = 125.0


class SpeedSource(str, Enum):
    COMMANDED_PC = "commanded_pc"
    EXECUTED_UR3 = "executed_ur3"


@dataclass(frozen=True)
class VelocitySeries:
    t: np.ndarray
    speed: np.ndarray
    source: SpeedSource = SpeedSource.EXECUTED_UR3

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        v = np.array(self.speed, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise InvalidParameterError("t and speed must be 1-D and equal length")
        if not (np.all(np.isfinite(v)) and np.all(v >= 0)):
            raise InvalidParameterError("speed must be finite and nonnegative")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "speed", v)
        object.__setattr__(self, "source", SpeedSource(self.source))

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class SnrReport:
    movement_name: str
    snr_db: float
    signal_power: float
    noise_power: float

    @property
    def is_infinite(self):
        """True when the executed signal matches the reference exactly."""
        return self.noise_power == 0


def moving_average(x, window):
    """Centered moving average; the window shrinks symmetrically at the ends."""
    if window < 1 or window % 2 == 0:
        raise InvalidParameterError("smoothing window must be odd and >= 1")
    x = np.asarray(x, float)
    if window == 1:
        return x.copy()
    half = window // 2
    n = len(x)
    out = np.empty(n)
    if n >= window:
        out[half:n - half] = np.convolve(x, np.ones(window), "valid") / window
    for i in list(range(min(half, n))) + list(range(max(n - half, half), n)):
        r = min(i, n - 1 - i, half)
        out[i] = np.sum(x[i - r:i + r + 1]) / (2 * r + 1)
    return out


def tcp_velocity(model: ArmModel, traj, smoothing_window=5,
                 source=SpeedSource.EXECUTED_UR3) -> VelocitySeries:
    """TCP speed of any trajectory exposing ``q`` (n, 6) and ``t`` (n,).

    Positions come from forward kinematics; the derivative uses central
    differences inside and one-sided differences at the ends.
    """
    t = np.asarray(traj.t, float)
    if len(t) < 2:
        raise InvalidParameterError("need at least 2 samples")
    pos = fk_positions(model, traj.q)
    vel = np.empty_like(pos)
    vel[1:-1] = (pos[2:] - pos[:-2]) / (t[2:] - t[:-2])[:, None]
    vel[0] = (pos[1] - pos[0]) / (t[1] - t[0])
    vel[-1] = (pos[-1] - pos[-2]) / (t[-1] - t[-2])
    speed = moving_average(np.linalg.norm(vel, axis=1), smoothing_window)
    return VelocitySeries(t, np.maximum(speed, 0.0), source)


def align(pc: VelocitySeries, ur3: VelocitySeries, rate=EVAL_RATE):
    """Linearly resample both series onto a common grid over their overlap.

    The grid starts at the overlap start and steps by ``1/rate``. Series that
    already share that grid are returned unchanged.
    """
    start = max(pc.t[0], ur3.t[0])
    stop = min(pc.t[-1], ur3.t[-1])
    n = int(math.floor((stop - start) * rate + 1e-9)) + 1 if stop >= start else 0
    if n < 2:
        raise InvalidParameterError("series overlap is shorter than two samples")
    grid = start + np.arange(n) / rate

    def resample(s):
        if len(s) == n and np.allclose(s.t, grid, rtol=0, atol=1e-12):
            return s
        return VelocitySeries(grid, np.interp(grid, s.t, s.speed), s.source)

    return resample(pc), resample(ur3)


def snr_db(pc: VelocitySeries, ur3: VelocitySeries, movement_name="") -> SnrReport:
    """Ratio of mean-square reference speed to mean-square tracking error, in dB.

    Identical series give ``snr_db == inf`` with ``is_infinite`` set.
    """
    v_pc = np.asarray(pc.speed if isinstance(pc, VelocitySeries) else pc, float)
    v_ur = np.asarray(ur3.speed if isinstance(ur3, VelocitySeries) else ur3, float)
    if v_pc.shape != v_ur.shape or len(v_pc) < 2:
        raise InvalidParameterError("series must be aligned, equal length and >= 2 samples")
    signal = float(np.mean(v_pc ** 2))
    noise = float(np.mean((v_ur - v_pc) ** 2))
    if signal == 0:
        raise UndefinedSnrError("reference signal has zero power")
    if noise == 0:
        return SnrReport(movement_name, math.inf, signal, 0.0)
    return SnrReport(movement_name, 10 * math.log10(signal / noise), signal, noise)


def format_snr(report: SnrReport):
    return "inf" if report.is_infinite else f"{report.snr_db:.2f}"


def render_table(reports):
    """Two-column text table, uniform movements left and lognormal right."""
    uniform = [r for r in reports if r.movement_name.startswith("uniform")]
    lognorm = [r for r in reports if not r.movement_name.startswith("uniform")]
    width = max([len(r.movement_name) for r in reports] + [12])
    head = f"{'uniform':<{width + 10}}  {'lognormal':<{width + 10}}"
    sub = f"{'name':<{width}}  {'SNR [dB]':>8}  {'name':<{width}}  {'SNR [dB]':>8}"
    lines = ["SNR BETWEEN SYNTHETIC AND EXECUTED ROBOT MOVEMENTS", head, sub]
    for i in range(max(len(uniform), len(lognorm))):
        left = (f"{uniform[i].movement_name:<{width}}  {format_snr(uniform[i]):>8}"
                if i < len(uniform) else " " * (width + 10))
        right = (f"{lognorm[i].movement_name:<{width}}  {format_snr(lognorm[i]):>8}"
                 if i < len(lognorm) else "")
        lines.append(f"{left}  {right}".rstrip())
    return "\n".join(lines)
