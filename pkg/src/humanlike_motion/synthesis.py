"""Target-point generation and timed 3-D path synthesis.

Both profile families move along the straight polyline through the target
points; they differ only in how arc length progresses in time within each
segment (lognormal CDF for human-like, trapezoidal speed for robotic-like).
"""
from dataclasses import dataclass, field
from enum import Enum
import math

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import InvalidParameterError
from .sigma_lognormal import StrokeTiming, distance_traveled, stroke_from_length

MIN_SEPARATION = 1e-6


class ProfileKind(str, Enum):
    HUMAN_LIKE = "human_like"
    ROBOTIC_LIKE = "robotic_like"


@dataclass(frozen=True)
class Box:
    """Axis-aligned parallelepiped ``lo <= p <= hi``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != 3 or len(hi) != 3:
            raise InvalidParameterError("box corners must be 3-vectors")
        if not all(h > l for l, h in zip(lo, hi)):
            raise InvalidParameterError(f"box has no volume: {lo} .. {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def centered(cls, center, extents):
        c = np.asarray(center, float)
        h = np.asarray(extents, float) / 2
        return cls(tuple(c - h), tuple(c + h))

    @property
    def center(self):
        return (np.array(self.lo) + np.array(self.hi)) / 2

    @property
    def extents(self):
        return np.array(self.hi) - np.array(self.lo)

    def contains(self, pts, tol=1e-12):
        pts = np.atleast_2d(pts)
        return bool(np.all(pts >= np.array(self.lo) - tol) and np.all(pts <= np.array(self.hi) + tol))


UNIT_BOX = Box((0.0, 0.0, 0.0), (1.0, 1.0, 1.0))


@dataclass(frozen=True)
class TargetPointSet:
    points: np.ndarray
    box: Box
    seed: int = 0

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 2:
            raise InvalidParameterError("need at least 2 three-dimensional points")
        if not self.box.contains(pts):
            raise InvalidParameterError("target point outside its box")
        if np.any(np.linalg.norm(np.diff(pts, axis=0), axis=1) <= MIN_SEPARATION):
            raise InvalidParameterError("consecutive target points coincide")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class TimedPath:
    """Samples ``(x, y, z, t)``; stored as ``xyz`` (n, 3) and ``t`` (n,)."""

    xyz: np.ndarray
    t: np.ndarray
    label: str = ""
    profile_kind: ProfileKind = ProfileKind.HUMAN_LIKE

    def __post_init__(self):
        xyz = np.array(self.xyz, dtype=float)
        t = np.array(self.t, dtype=float)
        if xyz.ndim != 2 or xyz.shape[1] != 3 or t.shape != (len(xyz),) or len(t) == 0:
            raise InvalidParameterError("xyz must be (n, 3) with n matching timestamps")
        if not (np.all(np.isfinite(xyz)) and np.all(np.isfinite(t))):
            raise InvalidParameterError("non-finite sample")
        if np.any(np.diff(t) <= 0):
            raise InvalidParameterError("timestamps must strictly increase")
        xyz.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "xyz", xyz)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "profile_kind", ProfileKind(self.profile_kind))

    @property
    def samples(self):
        return np.column_stack([self.xyz, self.t])

    @property
    def duration(self):
        return float(self.t[-1] - self.t[0])

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class ProfileSpec:
    stroke_timing: StrokeTiming = field(default_factory=StrokeTiming)
    sample_rate: float = 200.0
    ramp_fraction: float = 0.1
    repetitions: int = 3

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise InvalidParameterError("sample_rate must be > 0")
        if not 0 < self.ramp_fraction < 0.5:
            raise InvalidParameterError("ramp_fraction must lie in (0, 0.5)")
        if int(self.repetitions) != self.repetitions or self.repetitions < 1:
            raise InvalidParameterError("repetitions must be a positive integer")


def generate_target_points(n, box: Box = UNIT_BOX, seed=0) -> TargetPointSet:
    """Draw ``n`` uniform points in ``box``, redrawing any point that repeats its predecessor."""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2 target points, got {n}")
    if not isinstance(box, Box):
        box = Box(*box)
    rng = np.random.default_rng(seed)
    lo, hi = np.array(box.lo), np.array(box.hi)
    pts = [rng.uniform(lo, hi)]
    while len(pts) < n:
        p = rng.uniform(lo, hi)
        if np.linalg.norm(p - pts[-1]) > MIN_SEPARATION:
            pts.append(p)
    return TargetPointSet(np.array(pts), box, seed)


def _time_grid(total, rate):
    n = max(1, math.ceil(total * rate - 1e-9))
    return np.linspace(0.0, total, n + 1)


def _segments(points):
    pts = np.asarray(points, float)
    delta = np.diff(pts, axis=0)
    lengths = np.linalg.norm(delta, axis=1)
    if np.any(lengths <= MIN_SEPARATION):
        raise InvalidParameterError("degenerate (zero-length) segment")
    return pts, delta, lengths


def _resample(points, duration, rate, progress):
    """Place samples along the polyline; ``progress(j, tau)`` is the fraction of segment j done."""
    pts, delta, lengths = _segments(points)
    nseg = len(lengths)
    t = _time_grid(nseg * duration, rate)
    k = np.minimum(np.floor(t / duration + 1e-9).astype(int), nseg - 1)
    tau = np.clip(t - k * duration, 0.0, duration)
    frac = np.empty_like(t)
    for j in range(nseg):
        sel = k == j
        frac[sel] = progress(j, tau[sel], lengths[j])
    return pts[k] + delta[k] * frac[:, None], t


def _human_progress(timing):
    def progress(j, tau, length):
        stroke = stroke_from_length(length, 0.0, timing)
        # renormalise so the stroke lands exactly on its end point at tau = duration
        return distance_traveled(tau, stroke) / distance_traveled(timing.duration, stroke)
    return progress


def _trapezoid_progress(duration, ramp_fraction):
    ramp = ramp_fraction * duration
    denom = duration * (1 - ramp_fraction)

    def progress(j, tau, length):
        s = np.where(
            tau < ramp, tau ** 2 / (2 * ramp),
            np.where(tau <= duration - ramp, tau - ramp / 2,
                     denom - (duration - tau) ** 2 / (2 * ramp)))
        return s / denom
    return progress


def trapezoid_plateau_speed(length, duration, ramp_fraction):
    """Plateau level ``v`` with ``v * duration * (1 - ramp_fraction) == length``."""
    return length / (duration * (1 - ramp_fraction))


def synthesize_human_like(tps: TargetPointSet, spec: ProfileSpec = ProfileSpec(), label="") -> TimedPath:
    timing = spec.stroke_timing
    xyz, t = _resample(tps.points, timing.duration, spec.sample_rate, _human_progress(timing))
    return TimedPath(xyz, t, label, ProfileKind.HUMAN_LIKE)


def synthesize_robotic_like(tps: TargetPointSet, spec: ProfileSpec = ProfileSpec(), label="") -> TimedPath:
    d = spec.stroke_timing.duration
    xyz, t = _resample(tps.points, d, spec.sample_rate, _trapezoid_progress(d, spec.ramp_fraction))
    return TimedPath(xyz, t, label, ProfileKind.ROBOTIC_LIKE)


def synthesize(tps, kind, spec: ProfileSpec = ProfileSpec(), label=""):
    if ProfileKind(kind) is ProfileKind.HUMAN_LIKE:
        return synthesize_human_like(tps, spec, label)
    return synthesize_robotic_like(tps, spec, label)


def random_rotation(seed):
    return Rotation.random(random_state=seed).as_matrix()


def fit_to_workspace(path: TimedPath, target_box: Box, rotation=None) -> TimedPath:
    """Rotate, uniformly shrink and translate ``path`` into ``target_box``.

    The path is never enlarged, and is left where it is if it already fits
    after rotation and scaling. Timestamps are untouched, so speeds scale by
    exactly the applied factor.
    """
    if not isinstance(target_box, Box):
        target_box = Box(*target_box)
    R = np.eye(3) if rotation is None else np.asarray(rotation, float)
    if R.shape != (3, 3) or not np.allclose(R @ R.T, np.eye(3), atol=1e-9) or np.linalg.det(R) < 0:
        raise InvalidParameterError("rotation must be a proper 3x3 rotation")
    p = path.xyz @ R.T
    lo, hi = p.min(axis=0), p.max(axis=0)
    ext = hi - lo
    moving = ext > 0
    scale = 1.0
    if np.any(moving):
        scale = min(1.0, float(np.min(target_box.extents[moving] / ext[moving])))
    center = (lo + hi) / 2
    p = center + scale * (p - center)
    if not target_box.contains(p, tol=0.0):
        p = p + (target_box.center - center)
    return TimedPath(p, path.t, path.label, path.profile_kind)


def _concat(pieces):
    xyz, t = [pieces[0].xyz], [pieces[0].t]
    end = pieces[0].t[-1]
    for piece in pieces[1:]:
        xyz.append(piece.xyz[1:])
        t.append(piece.t[1:] - piece.t[0] + end)
        end = t[-1][-1]
    return np.vstack(xyz), np.concatenate(t)


def repeat_path(path: TimedPath, repetitions, spec: ProfileSpec = ProfileSpec()) -> TimedPath:
    """Play ``path`` back-to-back ``repetitions`` times.

    For an open path each repeat is preceded by a return stroke from the last
    point to the first, synthesised with the path's own profile kind and
    ``spec`` timing.
    """
    if int(repetitions) != repetitions or repetitions < 1:
        raise InvalidParameterError("repetitions must be a positive integer")
    if repetitions == 1:
        return path
    first, last = path.xyz[0], path.xyz[-1]
    pieces = [path]
    if np.linalg.norm(last - first) > MIN_SEPARATION:
        lo = np.minimum(first, last) - 1.0
        hi = np.maximum(first, last) + 1.0
        back = synthesize(TargetPointSet(np.array([last, first]), Box(lo, hi)),
                          path.profile_kind, spec)
        pieces_per_rep = [back, path]
    else:
        pieces_per_rep = [path]
    for _ in range(repetitions - 1):
        pieces.extend(pieces_per_rep)
    xyz, t = _concat(pieces)
    return TimedPath(xyz, t, path.label, path.profile_kind)


def sampled_speed(path: TimedPath):
    """Forward-difference speed between consecutive samples.

    Returns ``(t_mid, speed)`` with one value per sample interval.
    """
    dt = np.diff(path.t)
    speed = np.linalg.norm(np.diff(path.xyz, axis=0), axis=1) / dt
    return path.t[:-1] + dt / 2, speed


def count_local_maxima(values, rel_floor=1e-6):
    """Count strict rises followed by a fall (plateau-tolerant), ignoring bumps below ``rel_floor * max``."""
    v = np.asarray(values, float)
    floor = rel_floor * np.max(np.abs(v)) if len(v) else 0.0
    count = 0
    rising = False
    for a, b in zip(v[:-1], v[1:]):
        if b > a:
            rising = True
        elif b < a:
            if rising and a > floor:
                count += 1
            rising = False
    return count
