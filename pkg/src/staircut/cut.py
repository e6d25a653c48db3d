"""Evaluation of a single monotone staircase bipartition.

A bipartition is described by its left block set ``L``; the right set is the
complement. Gains are kept as exact fractions so that ties between cuts are
decided reproducibly.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bag import MDS, MIS, Bag, Segment, StairDirection
from .floorplan import Floorplan, Net


class BalType(enum.Enum):
    AREA = "AREA"
    NUMBER = "NUMBER"


class CutError(ValueError):
    pass


def _exact(x) -> Fraction:
    if isinstance(x, float) or hasattr(x, "dtype") and x.dtype.kind == "f":
        # decimal reading of the float: 0.4 means 2/5, not its binary neighbour
        return Fraction(repr(float(x)))
    return Fraction(x)


@dataclass(frozen=True)
class Params:
    gamma: float = 0.4
    beta: float = 0.0
    baltype: BalType = BalType.AREA

    def __post_init__(self):
        g, b = _exact(self.gamma), _exact(self.beta)
        if not (0 <= g <= 1 and 0 <= b <= 1):
            raise ValueError("gamma and beta must lie in [0, 1]")
        if g + b > 1:
            raise ValueError(f"gamma + beta must not exceed 1 (got {self.gamma} + {self.beta})")
        if isinstance(self.baltype, str):
            object.__setattr__(self, "baltype", BalType(self.baltype.upper()))

    @property
    def exact(self) -> tuple[Fraction, Fraction]:
        return _exact(self.gamma), _exact(self.beta)


@dataclass(frozen=True)
class CutEval:
    left: tuple[int, ...]
    balr: Fraction
    k_c: int
    k: int
    z: int
    z_max: int
    segments: int
    gain: Fraction

    @property
    def size(self) -> int:
        return len(self.left)

    @property
    def bend_ratio(self) -> float:
        return self.z / self.z_max if self.z_max else 0.0

    @property
    def netcut_ratio(self) -> float:
        return self.k_c / self.k if self.k else 0.0

    def sort_key(self):
        """Higher gain first; ties go to the smaller, then lexicographically smaller L."""
        return (-self.gain, len(self.left), self.left)

    def to_dict(self, fp: Floorplan | None = None) -> dict:
        d = {
            "left": fp.names(self.left) if fp is not None else list(self.left),
            "balr": float(self.balr), "k_c": self.k_c, "k": self.k,
            "z": self.z, "z_max": self.z_max, "segments": self.segments,
            "gain": float(self.gain),
        }
        return d


def best_cut(cuts: Iterable[CutEval]) -> CutEval:
    return min(cuts, key=CutEval.sort_key)


# ---------------------------------------------------------------------------
# validity

def is_valid_mscut(bag: Bag, left: Iterable[int]) -> bool:
    """True iff ``left`` has no back edge, i.e. it is closed under predecessors."""
    L = set(left)
    if bag.source not in L:
        raise CutError("the source block must be in the left partition")
    if bag.sink in L:
        raise CutError("the sink block must be in the right partition")
    return all(u in L for v in L for u in bag.pred[v])


# ---------------------------------------------------------------------------
# geometry

@dataclass(frozen=True)
class Polyline:
    """Merged staircase boundary; usually a single piece.

    Boundaries inside non-rectangular sub-floorplans can touch the region
    outline and split into several pieces, each stored as its own ordered
    segment list.
    """
    pieces: tuple[tuple[Segment, ...], ...]
    direction: StairDirection = MIS

    @property
    def segments(self) -> tuple[Segment, ...]:
        return tuple(s for piece in self.pieces for s in piece)

    def __len__(self) -> int:
        return sum(len(p) for p in self.pieces)

    def points(self) -> list[list[tuple[int, int]]]:
        """Vertex list of each piece, in traversal order."""
        out = []
        for piece in self.pieces:
            pts = list(_oriented(piece[0], piece[1] if len(piece) > 1 else None))
            if len(piece) == 1 and self.direction is MDS and piece[0].orient == "V":
                pts.reverse()
            for seg in piece[1:]:
                a, b = seg.endpoints()
                pts.append(b if a == pts[-1] else a)
            out.append(pts)
        return out

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segments)


def _oriented(first: Segment, nxt: Segment | None):
    a, b = first.endpoints()
    if nxt is None:
        return a, b
    na, nb = nxt.endpoints()
    return (a, b) if b in (na, nb) else (b, a)


def merge_segments(segments: Iterable[Segment], direction: StairDirection = MIS,
                   strict: bool = True) -> Polyline:
    """Merge collinear touching segments and chain them into ordered pieces.

    Pieces start at their left end (lowest for MIS, highest for MDS), so x is
    non-decreasing along every piece; y is non-decreasing for MIS and
    non-increasing for MDS.
    """
    lines: dict[tuple[str, int], list[tuple[int, int]]] = defaultdict(list)
    for s in segments:
        lines[(s.orient, s.at)].append((s.lo, s.hi))
    merged: list[Segment] = []
    for (orient, at), spans in sorted(lines.items()):
        spans.sort()
        lo, hi = spans[0]
        for a, b in spans[1:]:
            if a <= hi:
                hi = max(hi, b)
            else:
                merged.append(Segment(orient, at, lo, hi))
                lo, hi = a, b
        merged.append(Segment(orient, at, lo, hi))
    if not merged:
        return Polyline((), direction)

    at_point: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, s in enumerate(merged):
        for p in s.endpoints():
            at_point[p].append(i)
    if strict and any(len(v) > 2 for v in at_point.values()):
        raise CutError("staircase boundary branches; floorplan is not a dissection")

    sign = 1 if direction is MIS else -1
    seen = [False] * len(merged)
    pieces = []
    # start pieces at degree-1 endpoints, leftmost first
    ends = sorted((p for p, v in at_point.items() if len(v) == 1),
                  key=lambda p: (p[0], sign * p[1]))
    # closed loops have no free end; tolerated only in non-strict mode
    starts = [(p, at_point[p][0]) for p in ends]
    starts += [(merged[i].endpoints()[0], i) for i in range(len(merged))]
    for start, i in starts:
        if seen[i]:
            continue
        if len(at_point[start]) != 1 and strict:
            raise CutError("staircase boundary contains a closed loop")
        piece, p = [], start
        while True:
            seen[i] = True
            piece.append(merged[i])
            a, b = merged[i].endpoints()
            p = b if a == p else a
            nxt = [j for j in at_point[p] if not seen[j]]
            if not nxt:
                break
            i = nxt[0]
        pieces.append(tuple(piece))
    if strict and len(pieces) > 1:
        raise CutError(f"staircase boundary is disconnected ({len(pieces)} pieces)")
    return Polyline(tuple(pieces), direction)


def cut_segments(bag: Bag, left: Iterable[int]) -> list[Segment]:
    L = set(left)
    return [bag.segments[(u, v)] for u in L for v in bag.succ[u]
            if v not in L and (u, v) in bag.segments]


def boundary_polyline(fp: Floorplan, left: Iterable[int], direction: StairDirection = MIS,
                      bag: Bag | None = None, strict: bool = True) -> Polyline:
    """Boundary between the union of ``left`` and the rest, as merged segments."""
    if bag is None:
        from .bag import build_bag
        bag = build_bag(fp, direction)
    L = set(left)
    if not is_valid_mscut(bag, L):
        raise CutError("left set is not a valid monotone staircase cut")
    return merge_segments(cut_segments(bag, L), bag.direction, strict)


def count_bends(p: Polyline) -> tuple[int, int]:
    """Return ``(z, z_max)``: orientation changes and the segments-minus-one normaliser."""
    z = sum(1 for piece in p.pieces for a, b in zip(piece, piece[1:]) if a.orient != b.orient)
    z_max = sum(len(piece) - 1 for piece in p.pieces)
    return z, z_max


# ---------------------------------------------------------------------------
# nets and balance

def partition_nets(nets: Sequence[Net], left: Iterable[int]):
    """Split a netlist by a bipartition.

    Returns ``(k_c, left_nets, right_nets)``: uncut nets go to their side
    whole, a cut net contributes its restriction to each side that keeps at
    least two members.
    """
    L = set(left)
    k_c = 0
    left_nets: list[Net] = []
    right_nets: list[Net] = []
    for net in nets:
        inside = net.members & L
        if not inside:
            right_nets.append(net)
        elif len(inside) == len(net.members):
            left_nets.append(net)
        else:
            k_c += 1
            outside = net.members - inside
            if len(inside) >= 2:
                left_nets.append(Net(net.id, net.name, frozenset(inside)))
            if len(outside) >= 2:
                right_nets.append(Net(net.id, net.name, frozenset(outside)))
    return k_c, left_nets, right_nets


def _ratio(a: int, b: int) -> Fraction:
    return Fraction(min(a, b), max(a, b))


def balance_ratio(fp: Floorplan, left: Iterable[int], baltype: BalType = BalType.AREA) -> Fraction:
    L = set(left)
    if not 0 < len(L) < fp.n:
        raise CutError("both partitions must be non-empty")
    if BalType(baltype) is BalType.NUMBER:
        return _ratio(len(L), fp.n - len(L))
    a_l = sum(fp.blocks[i].area for i in L)
    return _ratio(a_l, sum(b.area for b in fp.blocks) - a_l)


def gain(params: Params, balr, k_c: int, k: int, z: int, z_max: int) -> Fraction:
    """Weighted objective: balance, uncut nets and straightness of the staircase.

    The net factor is 1 when there are no nets and the bend factor is 1 for a
    straight cut (``z_max == 0``).
    """
    g, b = params.exact
    net_factor = 1 - Fraction(k_c, k) if k else Fraction(1)
    bend_factor = 1 - Fraction(z, z_max) if z_max else Fraction(1)
    return g * _exact(balr) + (1 - g - b) * net_factor + b * bend_factor


def evaluate_cut(fp: Floorplan, bag: Bag, nets: Sequence[Net], left: Iterable[int],
                 params: Params) -> CutEval:
    L = frozenset(left)
    if not is_valid_mscut(bag, L):
        raise CutError("left set is not a valid monotone staircase cut")
    poly = merge_segments(cut_segments(bag, L), bag.direction, strict=False)
    z, z_max = count_bends(poly)
    k_c, _, _ = partition_nets(nets, L)
    balr = balance_ratio(fp, L, params.baltype)
    return CutEval(tuple(sorted(L)), balr, k_c, len(nets), z, z_max, len(poly),
                   gain(params, balr, k_c, len(nets), z, z_max))


class CutTracker:
    """Incremental evaluator for a growing left set.

    Keeps partition areas, per-net left counts and the set of cut edges, so
    each admission costs time proportional to the block's degree and nets.
    """

    def __init__(self, fp: Floorplan, bag: Bag, nets: Sequence[Net], params: Params):
        self.fp, self.bag, self.params = fp, bag, params
        self.nets = list(nets)
        self.k = len(self.nets)
        self.total_area = sum(b.area for b in fp.blocks)
        self.net_of: list[list[int]] = [[] for _ in range(fp.n)]
        for j, net in enumerate(self.nets):
            for m in net.members:
                self.net_of[m].append(j)
        self.reset()

    def reset(self) -> None:
        self.left: set[int] = set()
        self.area = 0
        self.count = [0] * self.k
        self.k_c = 0
        self.cut_edges: set[tuple[int, int]] = set()

    def add(self, v: int) -> None:
        self.left.add(v)
        self.area += self.fp.blocks[v].area
        for j in self.net_of[v]:
            c, size = self.count[j], len(self.nets[j].members)
            was_cut = 0 < c < size
            c += 1
            self.count[j] = c
            self.k_c += (0 < c < size) - was_cut
        segs = self.bag.segments
        for u in self.bag.pred[v]:
            self.cut_edges.discard((u, v))
        for w in self.bag.succ[v]:
            if w not in self.left and (v, w) in segs:
                self.cut_edges.add((v, w))

    def evaluate(self) -> CutEval:
        n_l = len(self.left)
        if self.params.baltype is BalType.NUMBER:
            balr = _ratio(n_l, self.fp.n - n_l)
        else:
            balr = _ratio(self.area, self.total_area - self.area)
        segs = self.bag.segments
        poly = merge_segments((segs[e] for e in self.cut_edges), self.bag.direction, strict=False)
        z, z_max = count_bends(poly)
        return CutEval(tuple(sorted(self.left)), balr, self.k_c, self.k, z, z_max, len(poly),
                       gain(self.params, balr, self.k_c, self.k, z, z_max))
