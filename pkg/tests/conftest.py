from pathlib import Path

import pytest

ASSETS = Path(__file__).resolve().parent.parent / "assets"


@pytest.fixture
def assets():
    return ASSETS


@pytest.fixture
def hohoho_corpus():
    return (ASSETS / "paper_hello.hohoho").read_text()


@pytest.fixture
def hohoho_repaired():
    return (ASSETS / "paper_hello_repaired.hohoho").read_text()


@pytest.fixture
def shoho_corpus():
    return (ASSETS / "paper_hello.shoho").read_text()
