import pathlib

import pytest

from noodle import load_model, parse

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def tsp4():
    return load_model(fixture_text("tsp4.json"))


@pytest.fixture(scope="session")
def tsp6():
    return load_model(fixture_text("tsp6.json"))


@pytest.fixture(scope="session")
def tsp6_full():
    return load_model(fixture_text("tsp6_full.json"))


@pytest.fixture(scope="session")
def circuit3():
    return load_model(fixture_text("circuit3.json"))


@pytest.fixture(scope="session")
def triangle():
    return load_model(fixture_text("coloring_triangle.json"))


@pytest.fixture(scope="session")
def path5():
    return load_model(fixture_text("coloring_path5.json"))


@pytest.fixture(scope="session")
def two_opt():
    return parse(fixture_text("two_opt.ndl"))


@pytest.fixture(scope="session")
def single_swap():
    return parse(fixture_text("single_swap.ndl"))


@pytest.fixture(scope="session")
def swap_pair():
    return parse(fixture_text("swap_pair.ndl"))
