"""Floorplan and netlist model.

Coordinates are stored as integers on a grid whose step is ``unit`` document
units; every geometric predicate downstream (abutment, overlap, coverage) is
therefore exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Sequence


class FloorplanError(ValueError):
    """Raised for malformed documents or violated floorplan invariants."""


@dataclass(frozen=True)
class Rect:
    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def w(self) -> int:
        return self.x1 - self.x0

    @property
    def h(self) -> int:
        return self.y1 - self.y0

    @property
    def area(self) -> int:
        return self.w * self.h

    def contains_point(self, x: int, y: int) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def contains(self, other: "Rect") -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)


@dataclass(frozen=True)
class Block:
    id: int
    name: str
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise FloorplanError(f"block {self.name!r} has non-positive size {self.w}x{self.h}")

    @property
    def area(self) -> int:
        return self.w * self.h

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, self.x + self.w, self.y + self.h)

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def top(self) -> int:
        return self.y + self.h

    def overlaps(self, other: "Block") -> bool:
        return (self.x < other.right and other.x < self.right
                and self.y < other.top and other.y < self.top)

    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2, self.y + self.h / 2)


@dataclass(frozen=True)
class Net:
    """A net is the set of blocks it touches; one pin per member block.

    ``id`` is kept stable when a net is restricted to a sub-floorplan, so a
    sub-net can always be traced back to the net it came from.
    """
    id: int
    name: str
    members: frozenset[int]

    @property
    def degree(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Floorplan:
    bbox: Rect
    blocks: tuple[Block, ...]
    nets: tuple[Net, ...] = ()
    unit: Decimal = Decimal(1)
    # parent block id of each local block when this is a sub-floorplan
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return len(self.nets)

    def block_by_name(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(name)

    def ids(self, names: Iterable[str]) -> frozenset[int]:
        index = {b.name: b.id for b in self.blocks}
        return frozenset(index[s] for s in names)

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self.blocks[i].name for i in sorted(ids)]

    def with_nets(self, nets: Sequence[Net]) -> "Floorplan":
        return Floorplan(self.bbox, self.blocks, tuple(nets), self.unit, self.origin)

    def subfloorplan(self, ids: Iterable[int], nets: Sequence[Net] = ()) -> "Floorplan":
        """Restrict to ``ids``; blocks are re-indexed densely in ascending id order.

        ``nets`` must already use the new local ids. The bounding box shrinks to
        the blocks' extent, and ``origin`` records the parent id of every block.
        """
        chosen = sorted(ids)
        if not chosen:
            raise FloorplanError("empty sub-floorplan")
        blocks = tuple(Block(i, self.blocks[g].name, self.blocks[g].x, self.blocks[g].y,
                             self.blocks[g].w, self.blocks[g].h)
                       for i, g in enumerate(chosen))
        bbox = Rect(min(b.x for b in blocks), min(b.y for b in blocks),
                    max(b.right for b in blocks), max(b.top for b in blocks))
        return Floorplan(bbox, blocks, tuple(nets), self.unit, tuple(chosen))

    def mirrored_vertically(self) -> "Floorplan":
        """Reflect about the horizontal mid-line of the bounding box."""
        y0, y1 = self.bbox.y0, self.bbox.y1
        blocks = tuple(Block(b.id, b.name, b.x, y0 + y1 - b.y - b.h, b.w, b.h)
                       for b in self.blocks)
        return Floorplan(self.bbox, blocks, self.nets, self.unit, self.origin)


def make_floorplan(width: int, height: int, blocks, nets=(), unit=1) -> Floorplan:
    """Build a floorplan from ``(name, x, y, w, h)`` tuples and ``(name, [block names])`` nets.

    Grid coordinates are taken as given. Net member names are resolved here;
    the result is checked with :func:`check_invariants`.
    """
    bl = tuple(Block(i, name, int(x), int(y), int(w), int(h))
               for i, (name, x, y, w, h) in enumerate(blocks))
    index = {b.name: b.id for b in bl}
    if len(index) != len(bl):
        raise FloorplanError("duplicate block names")
    nl = []
    for j, (name, members) in enumerate(nets):
        missing = [m for m in members if m not in index]
        if missing:
            raise FloorplanError(f"net {name!r} references unknown block(s) {missing}")
        nl.append(Net(j, name, frozenset(index[m] for m in members)))
    fp = Floorplan(Rect(0, 0, int(width), int(height)), bl, tuple(nl), Decimal(str(unit)))
    check_invariants(fp)
    return fp


def check_invariants(fp: Floorplan) -> None:
    """Raise :class:`FloorplanError` on overlaps, out-of-bbox blocks or short nets."""
    for net in fp.nets:
        if len(net.members) < 2:
            raise FloorplanError(f"net {net.name!r} has degree {len(net.members)} < 2")
        for m in net.members:
            if not 0 <= m < fp.n:
                raise FloorplanError(f"net {net.name!r} references missing block id {m}")
    for b in fp.blocks:
        if not fp.bbox.contains(b.rect):
            raise FloorplanError(f"block {b.name!r} lies outside the bounding box")
    pairs = find_overlaps(fp.blocks)
    if pairs:
        a, b = pairs[0]
        raise FloorplanError(f"blocks {a!r} and {b!r} overlap")


def find_overlaps(blocks: Sequence[Block]) -> list[tuple[str, str]]:
    # sweep over x so dense floorplans stay near-linear
    order = sorted(blocks, key=lambda b: (b.x, b.id))
    active: list[Block] = []
    found = []
    for b in order:
        active = [a for a in active if a.right > b.x]
        for a in active:
            if a.overlaps(b):
                found.append((a.name, b.name))
        active.append(b)
    return found


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    mode: str
    overlaps: list[tuple[str, str]]
    outside: list[str]
    uncovered_area: float

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (f"{status} ({self.mode}): {len(self.overlaps)} overlaps, "
                f"{len(self.outside)} outside bbox, uncovered area {self.uncovered_area:g}")


def validate(fp: Floorplan, mode: str = "mosaic") -> ValidationReport:
    if mode not in ("mosaic", "packed"):
        raise ValueError(f"unknown validation mode {mode!r}")
    overlaps = find_overlaps(fp.blocks)
    outside = [b.name for b in fp.blocks if not fp.bbox.contains(b.rect)]
    covered = sum(b.area for b in fp.blocks)
    uncovered = fp.bbox.area - covered
    ok = not overlaps and not outside
    if mode == "mosaic":
        ok = ok and uncovered == 0
    return ValidationReport(ok, mode, overlaps, outside,
                            float(uncovered * fp.unit * fp.unit))


def stats(fp: Floorplan) -> dict:
    k = len(fp.nets)
    pins = sum(len(net.members) for net in fp.nets)
    return {"n": fp.n, "k": k, "avg_net_degree": pins / k if k else 0.0}


# ---------------------------------------------------------------------------
# native JSON format

_TOP_KEYS = {"unit", "bbox", "blocks", "nets"}
_BBOX_KEYS = {"w", "h", "x", "y"}
_BLOCK_KEYS = {"name", "x", "y", "w", "h"}
_NET_KEYS = {"name", "blocks"}


def _to_grid(value, unit: Decimal, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FloorplanError(f"{what}: expected a number, got {value!r}")
    q = Decimal(repr(value)) / unit
    r = q.to_integral_value()
    if abs(q - r) > Decimal("1e-6"):
        raise FloorplanError(f"{what}: {value} is not a multiple of unit {unit}")
    return int(r)


def _from_grid(value: int, unit: Decimal):
    d = value * unit
    return int(d) if d == d.to_integral_value() else float(d)


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise FloorplanError(f"{where}: unknown key(s) {sorted(extra)}")


def load_floorplan(text: str | bytes) -> Floorplan:
    """Parse a native JSON floorplan document and validate its invariants."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FloorplanError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FloorplanError("top level must be an object")
    _reject_unknown(doc, _TOP_KEYS, "document")
    for key in ("bbox", "blocks"):
        if key not in doc:
            raise FloorplanError(f"document: missing {key!r}")
    unit = Decimal(repr(doc.get("unit", 1)))
    if unit <= 0:
        raise FloorplanError("unit must be positive")

    bb = doc["bbox"]
    _reject_unknown(bb, _BBOX_KEYS, "bbox")
    bx = _to_grid(bb.get("x", 0), unit, "bbox.x")
    by = _to_grid(bb.get("y", 0), unit, "bbox.y")
    bbox = Rect(bx, by, bx + _to_grid(bb["w"], unit, "bbox.w"), by + _to_grid(bb["h"], unit, "bbox.h"))

    blocks = []
    index: dict[str, int] = {}
    for i, rec in enumerate(doc["blocks"]):
        _reject_unknown(rec, _BLOCK_KEYS, f"blocks[{i}]")
        name = str(rec["name"])
        if name in index:
            raise FloorplanError(f"duplicate block name {name!r}")
        index[name] = i
        blocks.append(Block(i, name, *(_to_grid(rec[c], unit, f"block {name}.{c}")
                                       for c in ("x", "y", "w", "h"))))
    nets = []
    for j, rec in enumerate(doc.get("nets", [])):
        _reject_unknown(rec, _NET_KEYS, f"nets[{j}]")
        name = str(rec["name"])
        members = []
        for m in rec["blocks"]:
            if m not in index:
                raise FloorplanError(f"net {name!r} references unknown block {m!r}")
            members.append(index[m])
        nets.append(Net(j, name, frozenset(members)))
    fp = Floorplan(bbox, tuple(blocks), tuple(nets), unit)
    check_invariants(fp)
    return fp


def save_floorplan(fp: Floorplan) -> str:
    u = fp.unit
    bbox = {"w": _from_grid(fp.bbox.w, u), "h": _from_grid(fp.bbox.h, u)}
    if fp.bbox.x0 or fp.bbox.y0:
        bbox.update(x=_from_grid(fp.bbox.x0, u), y=_from_grid(fp.bbox.y0, u))
    doc = {
        "unit": int(u) if u == u.to_integral_value() else float(u),
        "bbox": bbox,
        "blocks": [{"name": b.name, "x": _from_grid(b.x, u), "y": _from_grid(b.y, u),
                    "w": _from_grid(b.w, u), "h": _from_grid(b.h, u)} for b in fp.blocks],
        "nets": [{"name": net.name, "blocks": fp.names(net.members)} for net in fp.nets],
    }
    return json.dumps(doc, indent=1)
