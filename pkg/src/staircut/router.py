"""Proxy early global router used to estimate via counts from an MSC tree.

This is a deliberately simple stand-in, labelled ``proxy-router`` in every
report. Each net is routed at the tree node that first cuts it: its blocks
are ordered along the node's staircase and consecutive pins are joined by
horizontal-first L paths. Under a reserved-layer model every bend costs one
via, plus an escape via at each end of the route.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .bag import MIS
from .floorplan import Floorplan
from .tree import MscNode, routing_order

ROUTER_LABEL = "proxy-router"


class RouterError(ValueError):
    pass


@dataclass(frozen=True)
class RouteModel:
    layers: int = 8
    wire_pitch: float = 1.0
    escape: int = 1
    hv_assignment: tuple[str, ...] = field(default=None)

    def __post_init__(self):
        if self.layers < 2:
            raise ValueError("need at least two routing layers")
        if self.escape not in (0, 1):
            raise ValueError("escape must be 0 or 1")
        if self.wire_pitch <= 0:
            raise ValueError("wire_pitch must be positive")
        if self.hv_assignment is None:
            object.__setattr__(self, "hv_assignment",
                               tuple("HV"[i % 2] for i in range(self.layers)))
        if len(self.hv_assignment) != self.layers or set(self.hv_assignment) - {"H", "V"}:
            raise ValueError("hv_assignment needs one 'H' or 'V' per layer")

    @property
    def layers_per_direction(self) -> int:
        return min(self.hv_assignment.count("H"), self.hv_assignment.count("V"))


@dataclass
class RoutedNet:
    net: int
    name: str
    path: str
    route: list[tuple[float, float]]
    bends: int
    vias: int
    length: float
    connection_lengths: list[float]


@dataclass
class CongestionReport:
    regions: list[dict]
    average: float
    maximum: float
    degenerate: list[str] = field(default_factory=list)   # regions with an empty staircase

    @property
    def overflow(self) -> list[str]:
        return [r["region"] for r in self.regions if r["ratio"] is not None and r["ratio"] > 1.0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["region", "demand", "capacity", "ratio"])
        for r in self.regions:
            ratio = "" if r["ratio"] is None else f"{r['ratio']:.6g}"
            w.writerow([r["region"] or "root", f"{r['demand']:.6g}", f"{r['capacity']:.6g}", ratio])
        return buf.getvalue()


def _bends(points) -> int:
    dirs = []
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if (x0, y0) == (x1, y1):
            continue
        d = "H" if y0 == y1 else "V"
        if not dirs or dirs[-1] != d:
            dirs.append(d)
    return max(0, len(dirs) - 1)


def route_net(fp: Floorplan, members, node: MscNode, escape: int = 1):
    """Route one net through ``node``; returns ``(points, bends, vias, lengths)``."""
    u = float(fp.unit)
    pins = []
    for b in sorted(members):
        cx, cy = fp.blocks[b].center()
        pins.append((cx * u, cy * u, b))
    if len(pins) < 2:
        return [], 0, 0, []
    sign = 1 if node.stype is MIS else -1
    pins.sort(key=lambda p: (p[0] + sign * p[1], p[2]))
    points = [(pins[0][0], pins[0][1])]
    lengths = []
    for (x0, y0, _), (x1, y1, _) in zip(pins, pins[1:]):
        points += [(x1, y0), (x1, y1)]
        lengths.append(abs(x1 - x0) + abs(y1 - y0))
    bends = _bends(points)
    return points, bends, bends + 2 * escape, lengths


def route_nets(tree: MscNode, fp: Floorplan, model: RouteModel | None = None,
               strict: bool = False):
    """Route every net of ``fp`` in routing order; returns ``(routed, congestion)``.

    A node whose cut separates disconnected parts of its region has an empty
    staircase and therefore zero capacity. Such regions are listed in
    ``congestion.degenerate`` with no ratio and left out of the average and
    maximum; with ``strict`` they raise ``RouterError`` instead.
    """
    model = model or RouteModel()
    nodes = {nd.path: nd for nd in tree.walk()}
    demand = {path: 0.0 for path in nodes}
    routed = []
    for j, path in routing_order(tree, fp):
        net = fp.nets[j]
        points, bends, vias, lengths = route_net(fp, net.members, nodes[path], model.escape)
        total = sum(lengths)
        demand[path] += total
        routed.append(RoutedNet(j, net.name, path, points, bends, vias, total, lengths))

    u = float(fp.unit)
    regions, degenerate = [], []
    for path, nd in nodes.items():
        capacity = nd.polyline.length * u * model.layers_per_direction / model.wire_pitch
        if capacity <= 0:
            if strict:
                raise RouterError(f"region {path or 'root'} has zero capacity")
            degenerate.append(path)
            regions.append({"region": path, "demand": demand[path], "capacity": 0.0, "ratio": None})
            continue
        regions.append({"region": path, "demand": demand[path], "capacity": capacity,
                        "ratio": demand[path] / capacity})
    ratios = [r["ratio"] for r in regions if r["ratio"] is not None]
    report = CongestionReport(regions, sum(ratios) / len(ratios) if ratios else 0.0,
                              max(ratios, default=0.0), degenerate)
    return routed, report


def via_summary(routed) -> dict:
    total_vias = sum(r.vias for r in routed)
    return {
        "total_vias": total_vias,
        "total_length": sum(r.length for r in routed),
        "vias_per_net": total_vias / len(routed) if routed else 0.0,
    }


def routed_to_json(routed) -> str:
    return json.dumps({"router": ROUTER_LABEL, "nets": [r.__dict__ for r in routed]}, indent=1)
