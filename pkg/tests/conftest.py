import json

import pytest

from oransec.app import traffic_steering_project_path
from oransec.catalog import bundled_catalog_path, load_bundled_catalog
from oransec.engine import UseCaseProfile, bundled_questions_path, load_bundled_questions


@pytest.fixture(scope="session")
def catalog():
    return load_bundled_catalog()


@pytest.fixture(scope="session")
def questions():
    return load_bundled_questions()


@pytest.fixture(scope="session")
def catalog_doc():
    return json.loads(bundled_catalog_path().read_text())


@pytest.fixture(scope="session")
def questions_doc():
    return json.loads(bundled_questions_path().read_text())


@pytest.fixture(scope="session")
def ts_project_doc():
    return json.loads(traffic_steering_project_path().read_text())


@pytest.fixture(scope="session")
def ts_profile(ts_project_doc):
    return UseCaseProfile.from_doc(ts_project_doc["profile"])
