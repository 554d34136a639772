import pathlib

import pytest

import satake

DATA = pathlib.Path(satake.__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_path():
    return DATA / "tables23.csv"


@pytest.fixture(scope="session")
def config_path():
    return DATA / "catalog_m24.cfg"


@pytest.fixture(scope="session")
def catalog24(config_path):
    return satake.Catalog.from_config_file(config_path, 24)
