import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def corpus():
    return pathlib.Path(os.environ.get("UGKIT_CORPUS_DIR", ROOT / "corpus"))


@pytest.fixture(scope="session")
def schema():
    import json

    path = os.environ.get("UGKIT_SCHEMA", ROOT / "schema" / "report.schema.json")
    with open(path) as f:
        return json.load(f)


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("UGKIT_CLI") or shutil.which("ugkit")
    if not exe:
        pytest.skip("ugkit executable not available")
    return exe
