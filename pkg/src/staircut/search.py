"""Single-level staircase bipartitioners: greedy BFS, greedy DFS and randomized wavefront.

Each grows the left set one block at a time from the source, admitting a
block only once all its predecessors are already on the left, so every
intermediate set is a valid monotone staircase. A run therefore records a
chain of exactly ``n - 1`` cuts, and the best cut by gain is returned.
"""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bag import Bag, BagError
from .cut import CutEval, CutTracker, Params, best_cut
from .floorplan import Floorplan, Net

RNG_ALGORITHM = "numpy.PCG64/SeedSequence(seed,trial)"
_MASK64 = (1 << 64) - 1


class Mode(enum.Enum):
    BFS = "BFS"
    DFS = "DFS"
    RAND = "RAND"


@dataclass(frozen=True)
class Chain:
    cuts: tuple[CutEval, ...]
    mode: Mode
    trial: int = 0

    @property
    def lefts(self) -> list[tuple[int, ...]]:
        return [c.left for c in self.cuts]


@dataclass(frozen=True)
class SearchResult:
    best: CutEval
    explored: tuple[CutEval, ...]
    chains: tuple[Chain, ...]
    seed: int | None = None

    @property
    def max_segments(self) -> int:
        """Largest segment count seen over all explored staircases."""
        return max(c.segments for c in self.explored)

    def to_json(self) -> str:
        doc = {
            "best": self.best.to_dict(),
            "explored": [c.to_dict() for c in self.explored],
            "chains": [{"mode": ch.mode.value, "trial": ch.trial,
                        "lefts": [list(l) for l in ch.lefts]} for ch in self.chains],
            "seed": self.seed,
            "rng": RNG_ALGORITHM if self.seed is not None else None,
        }
        return json.dumps(doc, sort_keys=True)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & _MASK64, trial])))


class _Growth:
    """Shared bookkeeping for one chain: left set, missing-predecessor counts, cuts."""

    def __init__(self, bag: Bag, tracker: CutTracker, memo: dict | None = None):
        self.bag = bag
        self.tracker = tracker
        self.memo = memo
        tracker.reset()
        self.missing = [len(p) for p in bag.pred]
        self.left: set[int] = set()
        self.cuts: list[CutEval] = []
        self.admit(bag.source)

    def admissible(self, w: int) -> bool:
        return w not in self.left and w != self.bag.sink and self.missing[w] == 0

    def admit(self, v: int) -> None:
        self.left.add(v)
        for w in self.bag.succ[v]:
            self.missing[w] -= 1
        self.tracker.add(v)
        if self.memo is None:
            self.cuts.append(self.tracker.evaluate())
            return
        key = frozenset(self.left)
        ev = self.memo.get(key)
        if ev is None:
            ev = self.memo[key] = self.tracker.evaluate()
        self.cuts.append(ev)

    def finish(self, mode: Mode, trial: int = 0) -> Chain:
        if len(self.cuts) != self.bag.n - 1:
            stuck = sorted(set(range(self.bag.n)) - self.left - {self.bag.sink})
            raise BagError(f"blocks {stuck} unreachable from the source; "
                           "floorplan is not a dissection")
        return Chain(tuple(self.cuts), mode, trial)


def _result(chains: list[Chain], seed=None) -> SearchResult:
    seen: dict[tuple[int, ...], CutEval] = {}
    for ch in chains:
        for c in ch.cuts:
            seen.setdefault(c.left, c)
    explored = tuple(sorted(seen.values(), key=lambda c: (len(c.left), c.left)))
    return SearchResult(best_cut(explored), explored, tuple(chains), seed)


def mscut_bend_bfs(bag: Bag, fp: Floorplan, nets: Sequence[Net], params: Params) -> SearchResult:
    """Greedy level-order growth in canonical neighbour order."""
    g = _Growth(bag, CutTracker(fp, bag, nets, params))
    queue = deque([bag.source])
    while queue:
        u = queue.popleft()
        for w in bag.succ[u]:
            if g.admissible(w):
                g.admit(w)
                queue.append(w)
    return _result([g.finish(Mode.BFS)])


def mscut_bend_dfs(bag: Bag, fp: Floorplan, nets: Sequence[Net], params: Params) -> SearchResult:
    """Greedy depth-first growth.

    A successor whose predecessors are not all on the left is skipped; it is
    picked up again from its last admitted predecessor, once the search
    reaches that block.
    """
    g = _Growth(bag, CutTracker(fp, bag, nets, params))
    stack = [iter(bag.succ[bag.source])]
    while stack:
        for w in stack[-1]:
            if g.admissible(w):
                g.admit(w)
                stack.append(iter(bag.succ[w]))
                break
        else:
            stack.pop()
    return _result([g.finish(Mode.DFS)])


def _rand_chain(bag: Bag, tracker: CutTracker, rng: np.random.Generator, trial: int,
                memo: dict) -> Chain:
    g = _Growth(bag, tracker, memo)
    front = [bag.source]
    while front:
        in_front = set(front)
        cand = [(u, w) for u in front for w in bag.succ[u] if g.admissible(w)]
        nxt = []
        while cand:
            _, w = cand[int(rng.integers(len(cand)))]
            g.admit(w)
            nxt.append(w)
            cand = [e for e in cand if e[1] != w]
            for x in bag.succ[w]:
                if g.admissible(x):
                    cand.extend((u, x) for u in bag.pred[x] if u in in_front)
        front = nxt
    return g.finish(Mode.RAND, trial)


def mscut_bend_rand(bag: Bag, fp: Floorplan, nets: Sequence[Net], params: Params,
                    seed: int = 0, trials: int = 3) -> SearchResult:
    """Randomized wavefront growth, repeated ``trials`` times.

    Within a wavefront level the outgoing edges towards admissible blocks are
    drawn uniformly at random; blocks admitted during a level form the next
    wavefront. Trial ``t`` draws from its own generator seeded by
    ``(seed, t)``, so trials are independent of execution order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tracker = CutTracker(fp, bag, nets, params)
    memo: dict = {}   # trials often revisit the same left sets
    chains = [_rand_chain(bag, tracker, trial_rng(seed, t), t, memo) for t in range(trials)]
    return _result(chains, seed)


def bipartition(mode, bag: Bag, fp: Floorplan, nets: Sequence[Net], params: Params,
                seed: int = 0, trials: int = 3) -> SearchResult:
    mode = Mode(mode)
    if mode is Mode.BFS:
        return mscut_bend_bfs(bag, fp, nets, params)
    if mode is Mode.DFS:
        return mscut_bend_dfs(bag, fp, nets, params)
    return mscut_bend_rand(bag, fp, nets, params, seed, trials)


@dataclass(frozen=True)
class PickHistogram:
    p: int
    counts: np.ndarray   # counts[j - 1] = picks of neighbour position j
    mean: float


def neighbor_pick_distribution(bag: Bag, vertex: int, samples: int, seed: int = 0) -> PickHistogram:
    """Empirical distribution of the random neighbour index over ``samples`` draws."""
    p = len(bag.succ[vertex])
    if p < 1:
        raise ValueError(f"vertex {vertex} has no successors")
    rng = trial_rng(seed, 0)
    picks = rng.integers(1, p + 1, size=samples)
    counts = np.bincount(picks, minlength=p + 1)[1:]
    return PickHistogram(p, counts, float(picks.mean()))
