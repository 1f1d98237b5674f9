import sys
from pathlib import Path

SRC_PATH = Path(__file__).resolve().parents[1] / "src"

if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

import pytest  # noqa: E402

from hedonic_graphs.generators import fixture  # noqa: E402
from hedonic_graphs.graph import Graph  # noqa: E402
from hedonic_graphs.models import GameDocument  # noqa: E402
from hedonic_graphs.stability import Partition  # noqa: E402

L, C, R = 0, 1, 2


@pytest.fixture
def parliament3():
    return fixture("parliament3")


@pytest.fixture
def parliament5():
    return fixture("parliament5")


@pytest.fixture
def enemy_variant():
    return fixture("parliament3_enemy_variant")


@pytest.fixture
def pi1():
    return Partition.from_blocks([[L, C], [R]])


@pytest.fixture
def triangle():
    return Graph.from_names(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])


@pytest.fixture
def path3():
    return Graph.from_names(["x", "y", "z"], [("x", "y"), ("y", "z")])


@pytest.fixture
def game_file(tmp_path):
    def write(game, name="game.json"):
        path = tmp_path / name
        path.write_text(GameDocument.from_game(game).model_dump_json(indent=2), encoding="utf-8")
        return str(path)

    return write
