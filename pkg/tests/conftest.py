import pytest

from humanlike_motion.kinematics import UR3, path_to_joint_trajectory
from humanlike_motion.manifest import default_manifest
from humanlike_motion.pipeline import build_path


@pytest.fixture(scope="session")
def manifest():
    return default_manifest()


@pytest.fixture(scope="session")
def dataset(manifest):
    """Workspace-fitted paths and their IK solutions for the ten default movements."""
    out = {}
    for m in manifest.movements:
        path = build_path(m, manifest.workspace)
        out[m.name] = (path, path_to_joint_trajectory(UR3, path))
    return out


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
