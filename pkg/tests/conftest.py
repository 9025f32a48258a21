from __future__ import annotations

from pathlib import Path

import pytest

from duovis.dataset import load_csv
from duovis.mvs import set_axis, switch_vis_type
from duovis.session import Session

TESTS = Path(__file__).resolve().parent
REPO = TESTS.parent
MINI8_CSV = TESTS / "data" / "mini8.csv"
CARS_CSV = REPO / "data" / "cars.csv"
ASSETS = REPO / "assets"

# MINI8 fixture facts (hand-derived from the 8 rows)
MINI8_CELLS = {
    "Cylinders": [4, 4, 4, 6, 6, 8, 8, 8],
    "MPG": [30, 32, 28, 22, 20, 15, 14, 16],
    "Horsepower": [70, 65, 80, 100, 110, 150, 160, 145],
    "Displacement": [90, 95, 100, 200, 210, 300, 310, 305],
    "Origin": ["J", "J", "E", "U", "U", "U", "U", "E"],
}


@pytest.fixture(scope="session")
def mini8():
    return load_csv(MINI8_CSV, dataset_id="mini8")


@pytest.fixture(scope="session")
def cars():
    return load_csv(CARS_CSV, dataset_id="cars")


@pytest.fixture
def scatter_session(mini8):
    """MINI8 scatter with x=Horsepower, y=MPG."""
    session = Session(mini8)
    set_axis(session, "x", "Horsepower")
    set_axis(session, "y", "MPG")
    return session


@pytest.fixture
def bar_session(mini8):
    """MINI8 bar chart with x=Cylinders, y=MPG."""
    session = Session(mini8)
    set_axis(session, "x", "Cylinders")
    set_axis(session, "y", "MPG")
    switch_vis_type(session, "bar_chart")
    return session
