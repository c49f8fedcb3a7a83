import json
import math

import numpy as np
import pytest

from humanlike_motion import io
from humanlike_motion.control import ControllerGains, PlantParams, simulate_execution
from humanlike_motion.errors import InvalidParameterError
from humanlike_motion.evaluation import SnrReport
from humanlike_motion.kinematics import UR3_HOME, JointTrajectory
from humanlike_motion.manifest import (ExperimentManifest, ManifestError,
                                       default_manifest, from_dict, load_manifest,
                                       save_manifest, to_dict)
from humanlike_motion.synthesis import ProfileKind, TimedPath


def test_timed_path_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    path = TimedPath(rng.normal(size=(30, 3)), np.arange(30) / 200.0, "lognorm_4_1")
    f = tmp_path / "lognorm_4_1.csv"
    io.write_timed_path(path, f)
    assert f.read_text().splitlines()[0] == "x,y,z,t"
    back = io.read_timed_path(f)
    assert back.label == "lognorm_4_1" and back.profile_kind is ProfileKind.HUMAN_LIKE
    assert np.allclose(back.samples, path.samples, rtol=1e-11, atol=0)
    assert io.read_timed_path(f, label="uniform_x").profile_kind is ProfileKind.ROBOTIC_LIKE


def test_joint_and_executed_round_trip(tmp_path):
    t = np.arange(40) / 200.0
    traj = JointTrajectory(np.asarray(UR3_HOME) + np.outer(t, np.ones(6)), t, "m")
    io.write_joint_trajectory(traj, tmp_path / "m.csv")
    assert (tmp_path / "m.csv").read_text().startswith("q1,q2,q3,q4,q5,q6,t\n")
    back = io.read_joint_trajectory(tmp_path / "m.csv")
    assert np.allclose(back.samples, traj.samples, rtol=1e-11, atol=0)
    ex = simulate_execution(traj, ControllerGains(), PlantParams(), 1)
    io.write_executed(ex, tmp_path / "e.csv")
    header = (tmp_path / "e.csv").read_text().splitlines()[0]
    assert header == "q1,q2,q3,q4,q5,q6,qd1,qd2,qd3,qd4,qd5,qd6,t"
    assert np.allclose(io.read_executed(tmp_path / "e.csv").samples, ex.samples, rtol=1e-11, atol=1e-15)


def test_wrong_header_rejected(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("a,b,c,d\n1,2,3,4\n")
    with pytest.raises(InvalidParameterError):
        io.read_timed_path(f)


def test_report_round_trip(tmp_path):
    reports = [SnrReport("uniform_4_1", 19.5, 0.04, 4.5e-4), SnrReport("lognorm_4_1", math.inf, 0.1, 0.0)]
    io.write_reports(reports, tmp_path / "r.csv")
    lines = (tmp_path / "r.csv").read_text().splitlines()
    assert lines[0] == "name,snr_db,signal_power,noise_power"
    assert lines[2].split(",")[1] == "inf"
    assert io.read_reports(tmp_path / "r.csv") == reports


def test_default_manifest_shape():
    m = default_manifest()
    kinds = [mv.profile_kind for mv in m.movements]
    assert kinds.count(ProfileKind.ROBOTIC_LIKE) == 5 and kinds.count(ProfileKind.HUMAN_LIKE) == 5
    assert {mv.n_points for mv in m.movements} == {4, 5}
    assert all(mv.repetitions == 3 for mv in m.movements)
    assert [mv.name for mv in m.movements][:5] == [
        "uniform_4_1", "uniform_4_2", "uniform_5_1", "uniform_5_2", "uniform_5_3"]


def test_manifest_json_round_trip(tmp_path):
    m = default_manifest()
    save_manifest(m, tmp_path / "m.json")
    assert json.loads((tmp_path / "m.json").read_text())["schema"] == 1
    assert load_manifest(tmp_path / "m.json") == m


@pytest.mark.parametrize("mutate", [
    lambda d: d["movements"].append(dict(d["movements"][0])),           # duplicate name
    lambda d: d["movements"][0].update(name="uniform_5_1x"),            # bad name
    lambda d: d["movements"][0].update(profile_kind="human_like"),      # prefix mismatch
    lambda d: d["movements"][0].update(n_points=5),                     # count mismatch
    lambda d: d["movements"][0].update(peak_offset=2.0),                # degenerate timing
    lambda d: d.update(schema=2),
    lambda d: d.update(smoothing=4),
    lambda d: d["movements"][0].update(bogus=1),
])
def test_manifest_validation(mutate):
    d = to_dict(default_manifest())
    mutate(d)
    with pytest.raises(ManifestError):
        from_dict(d)


def test_manifest_requires_movements():
    with pytest.raises(ManifestError):
        ExperimentManifest(())
