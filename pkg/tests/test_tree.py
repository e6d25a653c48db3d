import json

import pytest
from hypothesis import given, settings, strategies as st

from staircut.bag import MDS, MIS
from staircut.cut import Params, evaluate_cut
from staircut.search import Mode
from staircut.tree import (TreeError, build_msc_tree, child_seed, height_bounds, routing_order,
                           tree_metrics, tree_to_json)

from conftest import f2, f4, mosaic

P = Params(0.4, 0.3)


def test_f4_tree():
    fp = f4()
    root = build_msc_tree(fp, P)
    assert fp.names(root.cut.left) == ["A", "B"]
    assert float(root.cut.gain) == pytest.approx(0.85)
    assert root.stype is MIS and root.path == ""
    left, right = root.left, root.right
    assert (left.path, right.path) == ("L", "R")
    assert left.stype is MDS and right.stype is MDS
    assert fp.names(left.blocks) == ["A", "B"] and fp.names(right.blocks) == ["C", "D"]
    # left side: no nets, straight balanced cut
    assert left.cut.gain == 1
    # right side keeps n2 = {C, D} which its cut must split
    assert float(right.cut.gain) == pytest.approx(0.7)
    m = tree_metrics(root)
    assert (m.height, m.node_count) == (2, 3)
    assert sorted(m.leaf_block_counts) == [1, 1, 1, 1]


def test_f4_routing_order():
    fp = f4()
    order = routing_order(build_msc_tree(fp, P), fp)
    assert [(fp.nets[j].name, p) for j, p in order] == [("n1", ""), ("n2", "R")]


def test_two_blocks():
    root = build_msc_tree(f2(), P)
    assert root.left is None and root.right is None
    assert tree_metrics(root).height == 1


def test_single_block_rejected():
    from staircut.floorplan import make_floorplan
    with pytest.raises(TreeError):
        build_msc_tree(make_floorplan(1, 1, [("A", 0, 0, 1, 1)]), P)


def test_child_seed_is_stable():
    assert child_seed(0, "L") == child_seed(0, "L")
    assert child_seed(0, "L") != child_seed(0, "R")
    assert 0 <= child_seed(2**70, "R") < 2**64


def test_height_bounds():
    assert height_bounds(32) == (5, 10)
    assert height_bounds(100) == (7, 14)


def test_tree_json_roundtrips():
    fp = f4()
    doc = json.loads(tree_to_json(build_msc_tree(fp, P), fp))
    assert doc["left"] == ["A", "B"] and doc["cut"]["gain"] == 0.85
    assert doc["assigned_nets"] == ["n1"]
    assert doc["children"]["R"]["path"] == "R"


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 60), seed=st.integers(0, 10**9), mode=st.sampled_from(list(Mode)))
def test_tree_structure(n, seed, mode):
    fp = mosaic(n, seed)
    root = build_msc_tree(fp, Params(0.4, 0.1), mode, seed=seed, trials=2)
    leaves = []
    for nd in root.walk():
        assert nd.stype is (MIS if nd.level % 2 == 0 else MDS)
        assert set(nd.left_blocks) | set(nd.right_blocks) == set(nd.blocks)
        assert nd.left_blocks and nd.right_blocks
        for side, child in ((nd.left_blocks, nd.left), (nd.right_blocks, nd.right)):
            if child is None:
                assert len(side) == 1
                leaves.extend(side)
            else:
                assert child.blocks == tuple(side) and child.level == nd.level + 1
        # assigned nets are intact nets split by this node
        L = set(nd.cut.left)
        for j in nd.assigned_nets:
            net = fp.nets[j]
            assert net.members <= set(nd.blocks) and net.members & L and net.members - L
    assert sorted(leaves) == list(range(n))
    # every net goes to exactly one node
    assert sorted(j for j, _ in routing_order(root, fp)) == list(range(fp.k))
    # root cut score agrees with a direct evaluation on the full floorplan
    from staircut.bag import build_bag
    ev = evaluate_cut(fp, build_bag(fp), fp.nets, root.cut.left, Params(0.4, 0.1))
    assert ev.gain == root.cut.gain


def test_tree_determinism():
    fp = mosaic(80, 5)
    for mode in Mode:
        a = tree_to_json(build_msc_tree(fp, P, mode, seed=7))
        b = tree_to_json(build_msc_tree(fp, P, mode, seed=7))
        assert a == b
