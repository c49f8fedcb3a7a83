"""Lognormal stroke primitives.

A stroke's speed is ``D * Lambda(t)`` where ``Lambda`` is the unit-area
lognormal impulse response starting at ``t0``. Its direction sweeps from
``theta_s`` to ``theta_e`` following the lognormal CDF, so distance and
angle share the same erf-shaped progression.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.special import erf

from .errors import DegenerateParameterError, InvalidParameterError

# floor on t - t0 before taking the log
_MIN_DT = 1e-12
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class StrokeParams:
    amplitude_D: float
    onset_t0: float
    log_mean_mu: float
    log_spread_sigma: float
    angle_start_theta_s: float = 0.0
    angle_end_theta_e: float = 0.0

    def __post_init__(self):
        if not self.log_spread_sigma > 0:
            raise InvalidParameterError(f"sigma must be > 0, got {self.log_spread_sigma}")
        if not self.amplitude_D > 0:
            raise InvalidParameterError(f"amplitude must be > 0, got {self.amplitude_D}")
        if not math.isfinite(self.onset_t0):
            raise InvalidParameterError("onset must be finite")


@dataclass(frozen=True)
class StrokeTiming:
    duration: float = 0.1
    peak_offset: float = 0.05

    def __post_init__(self):
        if not 0 < self.peak_offset < self.duration:
            raise DegenerateParameterError(
                f"need 0 < peak_offset < duration, got {self.peak_offset}, {self.duration}"
            )


def _check_sigma(sigma):
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")


def _log_arg(t, t0):
    return np.log(np.maximum(np.asarray(t, dtype=float) - t0, _MIN_DT))


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def lognormal_value(t, t0, mu, sigma):
    """Unit-area lognormal evaluated at ``t`` (vectorised over ``t``); zero for t <= t0."""
    _check_sigma(sigma)
    t = np.asarray(t, dtype=float)
    dt = t - t0
    z = (_log_arg(t, t0) - mu) / sigma
    val = np.exp(-0.5 * z * z) / (sigma * math.sqrt(2 * math.pi) * np.maximum(dt, _MIN_DT))
    return _scalar(np.where(dt > 0, val, 0.0))


def _progress(t, t0, mu, sigma):
    # lognormal CDF, 0 before onset
    t = np.asarray(t, dtype=float)
    z = (_log_arg(t, t0) - mu) / (SQRT2 * sigma)
    return np.where(t > t0, 0.5 * (1.0 + erf(z)), 0.0)


def stroke_speed(t, s: StrokeParams):
    return _scalar(s.amplitude_D * np.asarray(
        lognormal_value(t, s.onset_t0, s.log_mean_mu, s.log_spread_sigma)))


def stroke_angle(t, s: StrokeParams):
    p = _progress(t, s.onset_t0, s.log_mean_mu, s.log_spread_sigma)
    th_s, th_e = s.angle_start_theta_s, s.angle_end_theta_e
    return _scalar(th_s + (th_e - th_s) * p)


def stroke_velocity(t, s: StrokeParams):
    """Planar velocity, shape ``(..., 2)``."""
    speed = np.asarray(stroke_speed(t, s))
    phi = np.asarray(stroke_angle(t, s))
    return np.stack([speed * np.cos(phi), speed * np.sin(phi)], axis=-1)


def sum_velocity(t, strokes):
    strokes = list(strokes)
    if not strokes:
        raise InvalidParameterError("need at least one stroke")
    total = stroke_velocity(t, strokes[0])
    for s in strokes[1:]:
        total = total + stroke_velocity(t, s)
    return total


def distance_traveled(t, s: StrokeParams):
    return _scalar(s.amplitude_D * _progress(t, s.onset_t0, s.log_mean_mu, s.log_spread_sigma))


def estimate_stroke_params(arc_length_ls, onset_t0, timing: StrokeTiming = StrokeTiming()):
    """Return ``(D, mu, sigma)`` for a stroke of length ``arc_length_ls``.

    The stroke must cover its length by ``onset + duration`` (erf(3) ~ 1) and
    peak at ``onset + peak_offset``. Eliminating mu between the two conditions
    leaves ``sigma**2 + 3*sqrt(2)*sigma - ln(k) = 0`` with
    ``k = duration / peak_offset``; sigma is its positive root.
    """
    if not arc_length_ls > 0:
        raise InvalidParameterError(f"arc length must be > 0, got {arc_length_ls}")
    k = timing.duration / timing.peak_offset
    if not k > 1:
        raise DegenerateParameterError(f"k = duration/peak_offset must exceed 1, got {k}")
    b = 3 * SQRT2
    # stable form of (-b + sqrt(b^2 + 4 ln k)) / 2
    c = math.log(k)
    sigma = 2 * c / (b + math.sqrt(b * b + 4 * c))
    mu = math.log(timing.peak_offset) + sigma * sigma
    return float(arc_length_ls), mu, sigma


def stroke_from_length(arc_length_ls, onset_t0, timing: StrokeTiming = StrokeTiming(),
                       theta_s=0.0, theta_e=0.0):
    D, mu, sigma = estimate_stroke_params(arc_length_ls, onset_t0, timing)
    return StrokeParams(D, onset_t0, mu, sigma, theta_s, theta_e)
