"""Reader for the GSRC bookshelf floorplanning dialect (.blocks / .pl / .nets).

Terminals and pads are dropped, pin offsets are ignored (a pin is the block
that owns it) and real coordinates are snapped to a grid.
"""
from __future__ import annotations

import re
from decimal import Decimal
from pathlib import Path

from .floorplan import Block, Floorplan, FloorplanError, Net, Rect, check_invariants

_POINT = re.compile(r"\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)")
_ROTATED = {"E", "W", "FE", "FW"}


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith(("UCSC", "UCLA")):
            continue
        yield lineno, line


def _snap(value: str, grid: Decimal) -> int:
    return int((Decimal(value) / grid).to_integral_value())


def parse_blocks(text: str) -> tuple[dict[str, tuple[Decimal, Decimal]], set[str]]:
    """Return ``({name: (w, h)}, terminal_names)`` from a .blocks file."""
    sizes: dict[str, tuple[Decimal, Decimal]] = {}
    terminals: set[str] = set()
    for lineno, line in _lines(text):
        if ":" in line and line.split(":")[0].strip().startswith("Num"):
            continue
        parts = line.split()
        name, kind = parts[0], parts[1].lower() if len(parts) > 1 else ""
        if kind == "terminal":
            terminals.add(name)
        elif kind == "hardrectilinear":
            pts = [(Decimal(a), Decimal(b)) for a, b in _POINT.findall(line)]
            if len(pts) < 2:
                raise FloorplanError(f"line {lineno}: block {name!r} has no vertices")
            xs, ys = [p[0] for p in pts], [p[1] for p in pts]
            sizes[name] = (max(xs) - min(xs), max(ys) - min(ys))
        elif kind.startswith("soft"):
            raise FloorplanError(f"line {lineno}: soft block {name!r} is not supported")
        else:
            raise FloorplanError(f"line {lineno}: cannot parse {line!r}")
    return sizes, terminals


def parse_pl(text: str) -> dict[str, tuple[Decimal, Decimal, str]]:
    placed = {}
    for lineno, line in _lines(text):
        parts = line.replace(":", " ").split()
        if len(parts) < 3:
            raise FloorplanError(f"line {lineno}: cannot parse {line!r}")
        orient = parts[3] if len(parts) > 3 else "N"
        placed[parts[0]] = (Decimal(parts[1]), Decimal(parts[2]), orient)
    return placed


def parse_nets(text: str) -> list[tuple[str, list[str]]]:
    nets: list[tuple[str, list[str]]] = []
    current: list[str] | None = None
    for lineno, line in _lines(text):
        head = line.split(":")[0].strip()
        if head in ("NumNets", "NumPins"):
            continue
        if head == "NetDegree":
            fields = line.split(":", 1)[1].split()
            name = fields[1] if len(fields) > 1 else f"net{len(nets)}"
            current = []
            nets.append((name, current))
            continue
        if current is None:
            raise FloorplanError(f"line {lineno}: pin before any NetDegree header")
        current.append(line.split()[0])
    return nets


def import_bookshelf(blocks_text: str, pl_text: str, nets_text: str,
                     grid: str | Decimal = "0.001") -> Floorplan:
    grid = Decimal(str(grid))
    sizes, terminals = parse_blocks(blocks_text)
    placed = parse_pl(pl_text)

    blocks = []
    for name, (w, h) in sizes.items():
        if name not in placed:
            raise FloorplanError(f"missing placement for block {name!r}")
        x, y, orient = placed[name]
        if orient in _ROTATED:
            w, h = h, w
        blocks.append(Block(len(blocks), name, _snap(x, grid), _snap(y, grid),
                            _snap(w, grid), _snap(h, grid)))
    if not blocks:
        raise FloorplanError("no blocks")
    index = {b.name: b.id for b in blocks}

    nets = []
    for name, pins in parse_nets(nets_text):
        members = set()
        for pin in pins:
            if pin in index:
                members.add(index[pin])
            elif pin not in terminals:
                raise FloorplanError(f"net {name!r} references unknown block {pin!r}")
        if len(members) >= 2:
            nets.append(Net(len(nets), name, frozenset(members)))

    bbox = Rect(min(b.x for b in blocks), min(b.y for b in blocks),
                max(b.right for b in blocks), max(b.top for b in blocks))
    fp = Floorplan(bbox, tuple(blocks), tuple(nets), grid)
    check_invariants(fp)
    return fp


def load_bookshelf(stem: str | Path, grid: str | Decimal = "0.001") -> Floorplan:
    """Load ``<stem>.blocks``, ``<stem>.pl`` and ``<stem>.nets``."""
    stem = Path(stem)
    read = lambda ext: stem.with_suffix(ext).read_text()
    return import_bookshelf(read(".blocks"), read(".pl"), read(".nets"), grid)
