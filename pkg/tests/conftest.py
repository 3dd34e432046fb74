import json
from importlib import resources

import pytest


@pytest.fixture(scope="session")
def golden():
    with resources.files("aklt.data").joinpath("golden.json").open() as fh:
        return json.load(fh)


def int_rows(block: dict) -> dict[int, int]:
    return {int(k): v for k, v in block["rows"].items()}
