"""Experiment manifests: the movement list plus workspace and control settings.

Manifests are JSON documents carrying ``"schema": 1``. Movement names follow
``<uniform|lognorm>_<n_points>_<index>``; the prefix fixes the profile kind.
"""
from dataclasses import asdict, dataclass, field, replace
import json
import re

from .control import ControllerGains, PlantParams
from .errors import InvalidParameterError
from .sigma_lognormal import StrokeTiming
from .synthesis import Box, ProfileKind, ProfileSpec

SCHEMA_VERSION = 1
NAME_RE = re.compile(r"^(uniform|lognorm)_(\d+)_(\d+)$")
PREFIX_KIND = {"uniform": ProfileKind.ROBOTIC_LIKE, "lognorm": ProfileKind.HUMAN_LIKE}

# paths are fitted into this box (m), well inside the UR3 envelope and clear of singularities
WORKSPACE_CENTER = (0.30, 0.0, 0.25)
WORKSPACE_EXTENTS = (0.15, 0.15, 0.15)


class ManifestError(InvalidParameterError):
    pass


@dataclass(frozen=True)
class MovementSpec:
    name: str
    profile_kind: ProfileKind
    n_points: int
    seed: int
    box_min: tuple = (0.0, 0.0, 0.0)
    box_max: tuple = (1.0, 1.0, 1.0)
    stroke_duration: float = 1.0
    peak_offset: float = 0.5
    ramp_fraction: float = 0.1
    repetitions: int = 3
    sample_rate: float = 200.0

    @property
    def box(self):
        return Box(self.box_min, self.box_max)

    @property
    def profile_spec(self):
        return ProfileSpec(StrokeTiming(self.stroke_duration, self.peak_offset),
                           self.sample_rate, self.ramp_fraction, self.repetitions)


@dataclass(frozen=True)
class ControlConfig:
    kp: float = 10.0
    ki: float = 5.0
    lag_tau: float = 0.02
    velocity_noise_std: float = 0.002
    control_rate: float = 125.0

    def gains(self):
        return ControllerGains(self.kp, self.ki)

    def plant(self):
        return PlantParams(self.lag_tau, self.velocity_noise_std, self.control_rate)


@dataclass(frozen=True)
class ExperimentManifest:
    movements: tuple
    workspace_center: tuple = WORKSPACE_CENTER
    workspace_extents: tuple = WORKSPACE_EXTENTS
    control: ControlConfig = field(default_factory=ControlConfig)
    smoothing: int = 5

    def __post_init__(self):
        validate(self)

    @property
    def workspace(self):
        return Box.centered(self.workspace_center, self.workspace_extents)

    def movement(self, name):
        for m in self.movements:
            if m.name == name:
                return m
        raise KeyError(name)


def validate(manifest: ExperimentManifest):
    names = [m.name for m in manifest.movements]
    if not names:
        raise ManifestError("manifest lists no movements")
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise ManifestError(f"duplicate movement names: {', '.join(dupes)}")
    for m in manifest.movements:
        match = NAME_RE.match(m.name)
        if not match:
            raise ManifestError(f"{m.name}: name must look like uniform_5_1 or lognorm_4_2")
        if PREFIX_KIND[match.group(1)] != ProfileKind(m.profile_kind):
            raise ManifestError(f"{m.name}: name prefix disagrees with profile_kind {m.profile_kind}")
        if int(match.group(2)) != m.n_points:
            raise ManifestError(f"{m.name}: name encodes {match.group(2)} points, n_points is {m.n_points}")
        if m.n_points < 2:
            raise ManifestError(f"{m.name}: need at least 2 points")
        try:
            m.box
            m.profile_spec
        except InvalidParameterError as exc:
            raise ManifestError(f"{m.name}: {exc}") from exc
    if manifest.smoothing < 1 or manifest.smoothing % 2 == 0:
        raise ManifestError("smoothing window must be odd and >= 1")
    try:
        manifest.workspace
        manifest.control.plant()
        manifest.control.gains()
    except InvalidParameterError as exc:
        raise ManifestError(str(exc)) from exc


def default_manifest():
    """Five trapezoidal and five lognormal movements of 4 or 5 points, each repeated three times."""
    layout = [(4, 1), (4, 2), (5, 1), (5, 2), (5, 3)]
    movements = []
    for prefix, base in (("uniform", 100), ("lognorm", 200)):
        for i, (n, k) in enumerate(layout):
            movements.append(MovementSpec(f"{prefix}_{n}_{k}", PREFIX_KIND[prefix], n, base + i))
    return ExperimentManifest(tuple(movements))


def to_dict(manifest: ExperimentManifest):
    movements = []
    for m in manifest.movements:
        d = asdict(m)
        d["profile_kind"] = ProfileKind(m.profile_kind).value
        d["box"] = {"min": list(d.pop("box_min")), "max": list(d.pop("box_max"))}
        movements.append(d)
    return {
        "schema": SCHEMA_VERSION,
        "workspace": {"center": list(manifest.workspace_center),
                      "extents": list(manifest.workspace_extents)},
        "control": asdict(manifest.control),
        "smoothing": manifest.smoothing,
        "movements": movements,
    }


def from_dict(data):
    if data.get("schema") != SCHEMA_VERSION:
        raise ManifestError(f"unsupported manifest schema {data.get('schema')!r}")
    try:
        movements = []
        for d in data["movements"]:
            d = dict(d)
            box = d.pop("box", {})
            movements.append(MovementSpec(
                profile_kind=ProfileKind(d.pop("profile_kind")),
                box_min=tuple(box.get("min", (0.0, 0.0, 0.0))),
                box_max=tuple(box.get("max", (1.0, 1.0, 1.0))),
                **d))
        ws = data.get("workspace", {})
        return ExperimentManifest(
            tuple(movements),
            tuple(ws.get("center", WORKSPACE_CENTER)),
            tuple(ws.get("extents", WORKSPACE_EXTENTS)),
            ControlConfig(**data.get("control", {})),
            int(data.get("smoothing", 5)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ManifestError):
            raise
        raise ManifestError(f"malformed manifest: {exc}") from exc


def load_manifest(filename):
    try:
        with open(filename) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {filename}: {exc}") from exc
    return from_dict(data)


def save_manifest(manifest, filename):
    with open(filename, "w") as fh:
        json.dump(to_dict(manifest), fh, indent=2)
        fh.write("\n")


def with_control(manifest, **changes):
    return replace(manifest, control=replace(manifest.control, **changes))
