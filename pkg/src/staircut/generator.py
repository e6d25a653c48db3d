"""Random slicing-tree mosaics with random netlists.

Used in place of a floorplacement tool: a slicing dissection is always an
exact mosaic, so every generated instance yields a well-formed adjacency
graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from .floorplan import Block, Floorplan, Net, Rect


@dataclass(frozen=True)
class GenSpec:
    n_blocks: int
    seed: int = 0
    aspect_range: tuple[float, float] = (0.3, 0.7)
    n_nets: int = 0
    # (mean degree, max degree); degrees are 2 + Poisson(mean - 2), clipped
    degree_distribution: tuple[float, int] = (2.16, 8)
    size: int = 100_000
    unit: str = "0.001"
    # probability that a split keeps the alternating H/V orientation
    alternate_prob: float = 0.8

    def __post_init__(self):
        if self.n_blocks < 2:
            raise ValueError("n_blocks must be >= 2")
        lo, hi = self.aspect_range
        if not 0 < lo <= hi < 1:
            raise ValueError("aspect_range must lie inside (0, 1)")
        if self.n_nets < 0:
            raise ValueError("n_nets must be >= 0")
        if self.degree_distribution[0] < 2 or self.degree_distribution[1] < 2:
            raise ValueError("net degrees are at least 2")
        if self.size < 2 * self.n_blocks:
            raise ValueError("size too small for the requested block count")


def generate_floorplan(spec: GenSpec) -> Floorplan:
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.aspect_range
    rects: list[tuple[int, int, int, int]] = []

    # explicit stack keeps left-to-right leaf order and avoids recursion limits
    stack = [(0, 0, spec.size, spec.size, spec.n_blocks, bool(rng.integers(2)))]
    while stack:
        x0, y0, x1, y1, count, vertical = stack.pop()
        if count == 1:
            rects.append((x0, y0, x1 - x0, y1 - y0))
            continue
        r = float(rng.uniform(lo, hi))
        c1 = min(count - 1, max(1, round(count * r)))
        if rng.random() > spec.alternate_prob:
            vertical = not vertical
        w, h = x1 - x0, y1 - y0
        # long thin strips would starve later splits of grid room
        if vertical and w < 2 * count or not vertical and h < 2 * count:
            vertical = w >= h
        if vertical:
            cut = x0 + min(w - (count - c1), max(c1, round(w * r)))
            parts = [(x0, y0, cut, y1, c1), (cut, y0, x1, y1, count - c1)]
        else:
            cut = y0 + min(h - (count - c1), max(c1, round(h * r)))
            parts = [(x0, y0, x1, cut, c1), (x0, cut, x1, y1, count - c1)]
        for px0, py0, px1, py1, c in reversed(parts):
            stack.append((px0, py0, px1, py1, c, not vertical))

    blocks = tuple(Block(i, f"b{i}", x, y, w, h) for i, (x, y, w, h) in enumerate(rects))
    nets = _sample_nets(rng, spec.n_blocks, spec.n_nets, spec.degree_distribution)
    return Floorplan(Rect(0, 0, spec.size, spec.size), blocks, nets, Decimal(spec.unit))


def _sample_nets(rng, n: int, k: int, dist) -> tuple[Net, ...]:
    mean, max_degree = dist
    cap = min(int(max_degree), n)
    nets = []
    for j in range(k):
        d = min(cap, 2 + int(rng.poisson(mean - 2.0)))
        members = rng.choice(n, size=d, replace=False)
        nets.append(Net(j, f"n{j}", frozenset(int(m) for m in members)))
    return tuple(nets)
