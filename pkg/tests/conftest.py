import json

import pytest

from staircut.floorplan import make_floorplan
from staircut.generator import GenSpec, generate_floorplan

F4_DOC = {
    "unit": 1,
    "bbox": {"w": 2, "h": 2},
    "blocks": [
        {"name": "A", "x": 0, "y": 1, "w": 1, "h": 1},
        {"name": "B", "x": 1, "y": 1, "w": 1, "h": 1},
        {"name": "C", "x": 0, "y": 0, "w": 1, "h": 1},
        {"name": "D", "x": 1, "y": 0, "w": 1, "h": 1},
    ],
    "nets": [{"name": "n1", "blocks": ["A", "D"]}, {"name": "n2", "blocks": ["C", "D"]}],
}


def f4():
    return make_floorplan(2, 2, [("A", 0, 1, 1, 1), ("B", 1, 1, 1, 1),
                                 ("C", 0, 0, 1, 1), ("D", 1, 0, 1, 1)],
                          [("n1", ["A", "D"]), ("n2", ["C", "D"])])


def f2():
    return make_floorplan(2, 1, [("A", 0, 0, 1, 1), ("B", 1, 0, 1, 1)])


def fan(p):
    """Block A spans the left column; p unit blocks stack to its right, so A has out-degree p."""
    blocks = [("A", 0, 0, 1, p)] + [(f"S{i}", 1, i, 1, 1) for i in range(p)]
    return make_floorplan(2, p, blocks)


def mosaic(n, seed, nets=None):
    k = round(5.44 * n) if nets is None else nets
    return generate_floorplan(GenSpec(n, seed=seed, n_nets=k))


@pytest.fixture
def F4():
    return f4()


@pytest.fixture
def F2():
    return f2()


@pytest.fixture
def f4_text():
    return json.dumps(F4_DOC)
