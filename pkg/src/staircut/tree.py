"""Recursive staircase bipartitioning (MSC tree).

The root is cut with an increasing staircase and the direction alternates
with depth. Each node rebuilds the adjacency graph of its own sub-floorplan,
runs one of the single-level bipartitioners and recurses into every side
holding at least two blocks.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from statistics import mean
from typing import Iterator

from .bag import MDS, MIS, BagError, StairDirection, build_bag
from .cut import CutEval, Params, Polyline, merge_segments, cut_segments, partition_nets
from .floorplan import Floorplan, Net
from .search import Mode, SearchResult, bipartition


class TreeError(ValueError):
    pass


@dataclass
class MscNode:
    path: str                      # "" for the root, then "L"/"R" per level
    level: int
    stype: StairDirection
    blocks: tuple[int, ...]        # ids in the original floorplan
    nets: tuple[Net, ...]          # members in original block ids
    cut: CutEval                   # left set in original block ids
    polyline: Polyline
    search: SearchResult = field(repr=False)
    assigned_nets: tuple[int, ...] = ()
    left: "MscNode | None" = None
    right: "MscNode | None" = None

    @property
    def left_blocks(self) -> tuple[int, ...]:
        return self.cut.left

    @property
    def right_blocks(self) -> tuple[int, ...]:
        L = set(self.cut.left)
        return tuple(b for b in self.blocks if b not in L)

    def walk(self) -> Iterator["MscNode"]:
        """Pre-order traversal."""
        yield self
        if self.left is not None:
            yield from self.left.walk()
        if self.right is not None:
            yield from self.right.walk()

    def to_dict(self, fp: Floorplan | None = None) -> dict:
        names = (lambda ids: fp.names(ids)) if fp is not None else (lambda ids: sorted(ids))
        return {
            "path": self.path,
            "level": self.level,
            "stype": self.stype.value,
            "blocks": names(self.blocks),
            "left": names(self.cut.left),
            "cut": {k: v for k, v in self.cut.to_dict().items() if k != "left"},
            "polyline": self.polyline.points(),
            "assigned_nets": [fp.nets[i].name if fp is not None else i for i in self.assigned_nets],
            "children": {side: child.to_dict(fp) for side, child in
                         (("L", self.left), ("R", self.right)) if child is not None},
        }


def child_seed(seed: int, side: str) -> int:
    digest = hashlib.blake2b(f"{seed}:{side}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _localize(nets, ids: tuple[int, ...]) -> list[Net]:
    local = {g: i for i, g in enumerate(ids)}
    return [Net(n.id, n.name, frozenset(local[m] for m in n.members)) for n in nets]


def build_msc_tree(fp: Floorplan, params: Params, mode=Mode.BFS, seed: int = 0,
                   trials: int = 3) -> MscNode:
    """Build the full bipartition hierarchy of ``fp``.

    Only the root is required to be an exact mosaic; deeper nodes work on
    staircase-shaped sub-floorplans whose adjacency graphs are built in
    packed mode.
    """
    if fp.n < 2:
        raise TreeError("need at least two blocks")
    sizes = {net.id: len(net.members) for net in fp.nets}
    mode = Mode(mode)

    def build(ids: tuple[int, ...], nets: list[Net], level: int, path: str, node_seed: int) -> MscNode:
        stype = MIS if level % 2 == 0 else MDS
        sub = fp.subfloorplan(ids) if level else fp
        try:
            bag = build_bag(sub, stype, mode="mosaic" if level == 0 else "packed")
        except BagError as exc:
            raise TreeError(f"node {path or 'root'}: {exc}") from exc
        local_nets = nets if level == 0 else _localize(nets, ids)
        res = bipartition(mode, bag, sub, local_nets, params, node_seed, trials)
        best = res.best
        left_local = set(best.left)
        poly = merge_segments(cut_segments(bag, left_local), stype, strict=False)

        glob = (lambda i: i) if level == 0 else (lambda i: ids[i])
        cut = CutEval(tuple(sorted(glob(i) for i in best.left)), best.balr, best.k_c, best.k,
                      best.z, best.z_max, best.segments, best.gain)
        L = set(cut.left)
        _, nets_l, nets_r = partition_nets(nets, L)
        assigned = tuple(sorted(n.id for n in nets
                                if len(n.members) == sizes[n.id] and n.members & L
                                and not n.members <= L))
        node = MscNode(path, level, stype, ids, tuple(nets), cut, poly, res, assigned)
        right_ids = tuple(i for i in ids if i not in L)
        if len(cut.left) >= 2:
            node.left = build(cut.left, nets_l, level + 1, path + "L", child_seed(node_seed, "L"))
        if len(right_ids) >= 2:
            node.right = build(right_ids, nets_r, level + 1, path + "R", child_seed(node_seed, "R"))
        return node

    return build(tuple(range(fp.n)), list(fp.nets), 0, "", seed)


@dataclass
class TreeMetrics:
    height: int
    node_count: int
    balr_mean: float
    bend_ratio_mean: float
    netcut_ratio_mean: float
    gain_mean: float
    per_level: list[dict]
    leaf_block_counts: list[int]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def tree_metrics(root: MscNode) -> TreeMetrics:
    nodes = list(root.walk())
    by_level: dict[int, list[MscNode]] = {}
    for nd in nodes:
        by_level.setdefault(nd.level, []).append(nd)

    def summary(group):
        return {
            "balr": mean(float(n.cut.balr) for n in group),
            "bend_ratio": mean(n.cut.bend_ratio for n in group),
            "netcut_ratio": mean(n.cut.netcut_ratio for n in group),
            "gain": mean(float(n.cut.gain) for n in group),
        }
    overall = summary(nodes)
    per_level = [dict(level=lv, nodes=len(g), **summary(g)) for lv, g in sorted(by_level.items())]
    # blocks that end up alone: sides of size one
    leaves = []
    for nd in nodes:
        for side, child in ((nd.left_blocks, nd.left), (nd.right_blocks, nd.right)):
            if child is None:
                leaves.append(len(side))
    return TreeMetrics(
        height=max(by_level) + 1,
        node_count=len(nodes),
        balr_mean=overall["balr"],
        bend_ratio_mean=overall["bend_ratio"],
        netcut_ratio_mean=overall["netcut_ratio"],
        gain_mean=overall["gain"],
        per_level=per_level,
        leaf_block_counts=leaves,
    )


def height_bounds(n: int) -> tuple[int, int]:
    lg = math.log2(n)
    return math.ceil(lg), math.ceil(2 * lg)


def routing_order(root: MscNode, fp: Floorplan) -> list[tuple[int, str]]:
    """Map every net of ``fp`` to the shallowest node that cuts it.

    Nets that no node cuts fall back to the deepest node holding all their
    blocks. Order is by level, then path, then net id.
    """
    placed: dict[int, str] = {}
    depth: dict[str, int] = {}
    for nd in root.walk():
        depth[nd.path] = nd.level
        for j in nd.assigned_nets:
            placed.setdefault(j, nd.path)
    for net in fp.nets:
        if net.id in placed:
            continue
        best = root
        for nd in root.walk():
            if net.members <= set(nd.blocks) and nd.level > best.level:
                best = nd
        placed[net.id] = best.path
    return sorted(((j, p) for j, p in placed.items()), key=lambda t: (depth[t[1]], t[1], t[0]))


def tree_to_json(root: MscNode, fp: Floorplan | None = None) -> str:
    return json.dumps(root.to_dict(fp), indent=1)
