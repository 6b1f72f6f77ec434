import json
from pathlib import Path

import pytest

from restlinguist.io import ApiCollection, ApiEntry, load_collection
from restlinguist.semantics import TableSimilarity
from restlinguist.uri import HttpMethod

FIXTURES = Path(__file__).parent / "fixtures"


def entry(uri, method="GET", documentation="", id="e1"):
    return ApiEntry(id=id, uri=uri, method=HttpMethod.parse(method), documentation=documentation)


@pytest.fixture(scope="session")
def similarity_fixture():
    return json.loads((FIXTURES / "topic_similarity.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def table_provider(similarity_fixture):
    pairs = {}
    for topic_word, row in similarity_fixture["similarity"].items():
        for node_word, value in row.items():
            pairs[(topic_word, node_word)] = value
    return TableSimilarity(pairs)


@pytest.fixture(scope="session")
def table_topics(similarity_fixture):
    topics = similarity_fixture["topics"]
    return [tuple(topics[key]) for key in sorted(topics)]


@pytest.fixture(scope="session")
def example_collection():
    return load_collection(FIXTURES / "example_collection.json")


# A small smart-home collection with three endpoint families and clearly
# themed documentation; used by the topic-model and end-to-end tests.
_SMART_HOME_DOCS = [
    ("devices/thermostats", "GET", "List every thermostat device installed in a structure."),
    ("devices/thermostats/{device_id}", "GET", "Read one thermostat device of a structure including the ambient temperature."),
    ("devices/thermostats/{device_id}/temperature", "PUT", "Set the target temperature of a thermostat device in the structure."),
    ("devices/thermostats/{device_id}/locale", "GET", "Locale shown on the thermostat device display inside its structure."),
    ("devices/thermostats/{device_id}/humidity", "GET", "Humidity percentage measured by the thermostat device of the structure."),
    ("devices/thermostats/{device_id}/fan", "PUT", "Toggle the fan timer of the thermostat device for a structure."),
    ("devices/thermostats/{device_id}/eco", "PUT", "Switch the thermostat device of the structure into eco heating mode."),
    ("structures/{structure_id}/hvac", "GET", "Hvac schedule of each thermostat device grouped by structure zone."),
    ("cameras", "GET", "List the cameras with their snapshot and clip history."),
    ("cameras/{camera_id}/snapshot", "GET", "Snapshot image captured by the camera lens."),
    ("cameras/{camera_id}/clips", "GET", "Video clips and image frames recorded by the camera."),
    ("cameras/{camera_id}/motion", "GET", "Motion regions the camera marked on recent image snapshots."),
    ("cameras/{camera_id}/stream", "GET", "Live video stream published by the camera."),
    ("cameras/{camera_id}/settings", "PUT", "Update camera options such as image quality and night vision."),
    ("structures/{structure_id}/alarms", "GET", "Smoke alarm sound notifications with battery levels."),
    ("structures/{structure_id}/alarms/{alarm_id}", "GET", "Read one smoke alarm siren and its sound state."),
    ("structures/{structure_id}/co", "GET", "Carbon monoxide alarm sound readings and siren tests."),
    ("devices/smoke", "GET", "Smoke alarm sensors with siren sound and battery health."),
]


@pytest.fixture(scope="session")
def smart_home_collection():
    entries = tuple(
        ApiEntry(id=f"e{i + 1}", uri=f"/{uri}", method=HttpMethod.parse(method), documentation=doc)
        for i, (uri, method, doc) in enumerate(_SMART_HOME_DOCS)
    )
    return ApiCollection(name="smart-home", entries=entries)
