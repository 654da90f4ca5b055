import json
import os
from pathlib import Path

import pytest

from riesz_revolution.config import settings

RESOURCES_DIR = Path(os.path.dirname(__file__)) / "resources"


def pytest_addoption(parser):
    parser.addoption(
        "--acceptance",
        action="store_true",
        default=False,
        help="enable the desk-scale reproduction runs (minutes of optimizer time)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: mark test as desk-scale acceptance run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--acceptance"):
        return
    skip_marker = pytest.mark.skip(reason="need --acceptance option to run")

    for item in items:
        is_acceptance_marker = "acceptance" in item.keywords
        is_acceptance_param = False

        # Check for acceptance=True in parametrized test cases
        if hasattr(item, 'callspec') and 'acceptance' in item.callspec.params:
            is_acceptance_param = item.callspec.params['acceptance'] is True

        if is_acceptance_marker or is_acceptance_param:
            item.add_marker(skip_marker)


def load_special_values() -> dict:
    with open(RESOURCES_DIR / "special_values.json", "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def special_values() -> dict:
    """Reference constants shared by the numeric tests."""
    return load_special_values()


@pytest.fixture(autouse=True)
def no_seed_override(monkeypatch):
    """Keep a RIESZ_SEED of the calling shell out of the tests."""
    monkeypatch.delenv(settings.SEED_ENV_VAR, raising=False)


@pytest.fixture
def experiment_file(tmp_path):
    """Write an experiment document into the temporary directory and return its path."""

    def _write(document: dict, name: str = "experiment.json") -> Path:
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f)
        return path

    return _write
