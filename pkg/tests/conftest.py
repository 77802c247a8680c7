from pathlib import Path

import pytest

from models.permutation import PermGroup, Permutation
from services import hermitian

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def s4() -> PermGroup:
    return PermGroup(
        4,
        (Permutation((1, 2, 3, 0)), Permutation((1, 0, 2, 3))),
        "S_4",
    )


@pytest.fixture
def s5() -> PermGroup:
    return PermGroup(
        5,
        (Permutation((1, 2, 3, 4, 0)), Permutation((1, 0, 2, 3, 4))),
        "S_5",
    )


@pytest.fixture
def fano_group() -> PermGroup:
    """x -> x+1 and x -> 2x on Z_7; order 21."""
    return PermGroup(
        7,
        (
            Permutation(tuple((x + 1) % 7 for x in range(7))),
            Permutation(tuple((2 * x) % 7 for x in range(7))),
        ),
        "7:3",
    )


@pytest.fixture(scope="session")
def psu33_actions() -> list[tuple[int, PermGroup]]:
    return hermitian.natural_actions(3, 3)


@pytest.fixture(scope="session")
def psu42_actions() -> list[tuple[int, PermGroup]]:
    return hermitian.natural_actions(4, 2)
