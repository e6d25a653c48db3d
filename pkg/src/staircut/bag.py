"""Directed block adjacency graph (BAG) for increasing / decreasing staircases.

For an MIS graph an edge ``i -> j`` means block ``i`` lies left of or above
an abutting block ``j``; for MDS it means left of or below. The source is the
block at the bounding-box corner where the left partition grows from
(top-left for MIS, bottom-left for MDS) and the sink sits at the opposite
corner.

Sub-floorplans produced by recursive bipartitioning are generally not
rectangles. There the corner may fall in a hole and several blocks may have
no predecessor (or no successor); such blocks are tied to the source (sink)
with *virtual* edges that carry no geometry. Virtual edges never change which
left sets are valid, they only make every block reachable from the source.
"""
from __future__ import annotations

import bisect
import enum
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .floorplan import Block, Floorplan


class StairDirection(enum.Enum):
    MIS = "MIS"
    MDS = "MDS"

    @property
    def other(self) -> "StairDirection":
        return StairDirection.MDS if self is StairDirection.MIS else StairDirection.MIS


MIS = StairDirection.MIS
MDS = StairDirection.MDS


class BagError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    """Axis-aligned piece of shared boundary: ``orient`` is 'H' or 'V'."""
    orient: str
    at: int
    lo: int
    hi: int

    @property
    def length(self) -> int:
        return self.hi - self.lo

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        if self.orient == "H":
            return (self.lo, self.at), (self.hi, self.at)
        return (self.at, self.lo), (self.at, self.hi)


@dataclass(frozen=True)
class Bag:
    direction: StairDirection
    n: int
    succ: tuple[tuple[int, ...], ...]
    pred: tuple[tuple[int, ...], ...]
    source: int
    sink: int
    segments: dict = field(compare=False, repr=False)
    virtual: frozenset = frozenset()

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.succ[u]]

    @property
    def geometric_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if e not in self.virtual]

    def with_edge(self, u: int, v: int) -> "Bag":
        """Copy with one extra (artificial) edge; used to probe validity checks."""
        succ = [list(s) for s in self.succ]
        pred = [list(p) for p in self.pred]
        succ[u].append(v)
        pred[v].append(u)
        return Bag(self.direction, self.n, tuple(map(tuple, succ)), tuple(map(tuple, pred)),
                   self.source, self.sink, self.segments, self.virtual | {(u, v)})

    def to_dot(self, fp: Floorplan | None = None) -> str:
        name = (lambda i: fp.blocks[i].name) if fp is not None else str
        lines = [f"digraph BAG_{self.direction.value} {{"]
        for v in range(self.n):
            label = name(v)
            if v == self.source:
                label += " (source)"
            elif v == self.sink:
                label += " (sink)"
            lines.append(f'  v{v} [label="{label}"];')
        for u, v in self.edges:
            style = " [style=dashed]" if (u, v) in self.virtual else ""
            lines.append(f"  v{u} -> v{v}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _adjacent_pairs(blocks, hi_of, lo_of, span_of, eps):
    """Yield ``(a, b, seg_at, lo, hi)`` where a's far side meets b's near side.

    ``hi_of``/``lo_of`` pick the facing coordinates along the axis being
    tested and ``span_of`` the perpendicular interval; facing sides may be
    up to ``eps`` apart and must overlap by more than ``eps``.
    """
    starts = sorted((lo_of(b), b.id) for b in blocks)
    keys = [s[0] for s in starts]
    for a in blocks:
        edge = hi_of(a)
        i = bisect.bisect_left(keys, edge)
        j = bisect.bisect_right(keys, edge + eps)
        a_lo, a_hi = span_of(a)
        for _, bid in starts[i:j]:
            b = blocks[bid]
            b_lo, b_hi = span_of(b)
            lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
            if hi - lo > eps:
                yield a.id, bid, edge, lo, hi


def _corner_block(fp: Floorplan, x: int, y: int, candidates, mode: str, what: str) -> int:
    hits = [b.id for b in fp.blocks if b.rect.contains_point(x, y)]
    if len(hits) > 1:
        raise BagError(f"{what} corner ({x}, {y}) claimed by several blocks: "
                       f"{fp.names(hits)}")
    if hits:
        return hits[0]
    if mode == "mosaic":
        raise BagError(f"{what} corner ({x}, {y}) is not covered by any block")

    def dist(b: Block) -> int:
        dx = max(b.x - x, 0, x - b.right)
        dy = max(b.y - y, 0, y - b.top)
        return max(dx, dy)
    return min(candidates, key=lambda i: (dist(fp.blocks[i]), i))


def build_bag(fp: Floorplan, direction: StairDirection = MIS, eps: int = 0,
              mode: str = "mosaic") -> Bag:
    """Build the BAG of ``fp``.

    ``mode='mosaic'`` requires both corners to be covered and every block to
    be reachable; ``mode='packed'`` falls back to the nearest eligible block
    and adds virtual edges where the geometry leaves blocks unattached.
    """
    if fp.n < 2:
        raise BagError("a BAG needs at least two blocks")
    blocks = fp.blocks
    succ: dict[int, set[int]] = defaultdict(set)
    segments: dict[tuple[int, int], Segment] = {}

    # left-of: a's right side meets b's left side
    for a, b, at, lo, hi in _adjacent_pairs(blocks, lambda q: q.right, lambda q: q.x,
                                            lambda q: (q.y, q.top), eps):
        succ[a].add(b)
        segments[(a, b)] = Segment("V", at, lo, hi)
    # a's bottom meets b's top: a is above b
    for below, above, at, lo, hi in _adjacent_pairs(blocks, lambda q: q.top, lambda q: q.y,
                                                    lambda q: (q.x, q.right), eps):
        u, v = (above, below) if direction is MIS else (below, above)
        succ[u].add(v)
        segments[(u, v)] = Segment("H", at, lo, hi)

    indeg = [0] * fp.n
    for u in succ:
        for v in succ[u]:
            indeg[v] += 1
    roots = [v for v in range(fp.n) if indeg[v] == 0]
    leaves = [v for v in range(fp.n) if not succ[v]]

    bb = fp.bbox
    if direction is MIS:
        src_pt, snk_pt = (bb.x0, bb.y1), (bb.x1, bb.y0)
    else:
        src_pt, snk_pt = (bb.x0, bb.y0), (bb.x1, bb.y1)
    source = _corner_block(fp, *src_pt, roots, mode, "source")
    sink = _corner_block(fp, *snk_pt, [v for v in leaves if v != source] or leaves,
                         mode, "sink")
    if source == sink:
        raise BagError("source and sink coincide")

    virtual = set()
    extra_roots = [v for v in roots if v != source]
    extra_leaves = [v for v in leaves if v != sink]
    if mode == "mosaic" and (extra_roots or extra_leaves or indeg[source] or succ[sink]):
        raise BagError("floorplan is not a dissection: unreachable blocks "
                       f"{fp.names(extra_roots + extra_leaves)}")
    if indeg[source] or succ[sink]:
        raise BagError("corner blocks are not extremal in the adjacency order")
    for v in extra_roots:
        succ[source].add(v)
        virtual.add((source, v))
    for v in extra_leaves:
        succ[v].add(sink)
        virtual.add((v, sink))

    # canonical neighbour order: top-to-bottom, then left-to-right
    def key(v: int):
        b = blocks[v]
        return (-b.top, b.x, v)
    succ_t = tuple(tuple(sorted(succ[u], key=key)) for u in range(fp.n))
    pred_l: list[list[int]] = [[] for _ in range(fp.n)]
    for u in range(fp.n):
        for v in succ_t[u]:
            pred_l[v].append(u)
    pred_t = tuple(tuple(sorted(p, key=key)) for p in pred_l)

    bag = Bag(direction, fp.n, succ_t, pred_t, source, sink, segments, frozenset(virtual))
    if topological_order(bag) is None:
        raise BagError("adjacency graph has a cycle")
    return bag


def topological_order(bag: Bag) -> list[int] | None:
    indeg = [len(p) for p in bag.pred]
    queue = deque(v for v in range(bag.n) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in bag.succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == bag.n else None


@dataclass
class StructureReport:
    acyclic: bool
    n_edges: int
    planar_bound: int | None
    within_bound: bool
    sources: list[int]
    sinks: list[int]

    @property
    def unique_source(self) -> bool:
        return len(self.sources) == 1

    @property
    def unique_sink(self) -> bool:
        return len(self.sinks) == 1

    @property
    def ok(self) -> bool:
        return self.acyclic and self.within_bound and self.unique_source and self.unique_sink


def check_structure(bag: Bag) -> StructureReport:
    n_edges = sum(len(s) for s in bag.succ)
    bound = 3 * bag.n - 6 if bag.n >= 3 else None
    return StructureReport(
        acyclic=topological_order(bag) is not None,
        n_edges=n_edges,
        planar_bound=bound,
        within_bound=bound is None or n_edges <= bound,
        sources=[v for v in range(bag.n) if not bag.pred[v]],
        sinks=[v for v in range(bag.n) if not bag.succ[v]],
    )
