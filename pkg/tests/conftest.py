"""
Pytest configuration and shared fixtures
"""

import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from geometry.camera import Camera  # noqa: E402
from reconstruction.reconstructor import reconstruct_sequence  # noqa: E402
from simulation.simulation_engine import simulate  # noqa: E402
from tests.fixtures.scene_fixtures import SceneFactory  # noqa: E402

SCENES_DIR = project_root / "scenes"


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "integration: mark test as integration test (full pipeline through files and the CLI)"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow (may take several seconds)"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically"""
    for item in items:
        # Add integration marker to integration tests
        if "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)


@pytest.fixture(scope="session")
def test_config():
    """Provide test configuration"""
    from tests.test_utils import create_test_config
    return create_test_config()


@pytest.fixture
def camera():
    """Unit focal length camera at the origin"""
    return Camera(f=1.0)


@pytest.fixture
def reference_scene():
    """Sphere of 200 points moving through (0,10,20) -> (0,8,24) -> (2,8,22) -> (4,5,26)"""
    return SceneFactory.reference_scene()


@pytest.fixture
def reference_simulation(reference_scene):
    return simulate(reference_scene)


@pytest.fixture
def reference_reconstruction(reference_scene, reference_simulation):
    return reconstruct_sequence(reference_scene.camera, reference_simulation.tracks)


@pytest.fixture
def scenes_dir():
    return SCENES_DIR
