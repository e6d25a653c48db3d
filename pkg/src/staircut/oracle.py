"""Exhaustive ground truth for small floorplans.

Every monotone staircase corresponds to an order ideal of the BAG that
contains the source and excludes the sink. These ideals are listed by reverse
search, organised as a Hasse diagram, and scored to find the global optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bag import Bag
from .cut import CutEval, Params, best_cut, evaluate_cut
from .floorplan import Floorplan, Net

DEFAULT_CAP = 20


@dataclass(frozen=True)
class StaircaseSet:
    ideals: tuple[frozenset[int], ...]

    @property
    def count(self) -> int:
        return len(self.ideals)


@dataclass(frozen=True)
class HasseDiagram:
    ideals: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]
    start: int
    stop: int

    def successors(self, i: int) -> list[int]:
        return [b for a, b in self.edges if a == i]

    def to_dot(self, fp: Floorplan | None = None, chains=(), colors=("blue", "black", "red", "darkgreen")) -> str:
        """Graphviz text; each chain in ``chains`` (a list of left sets) is drawn in its own color."""
        index = {s: i for i, s in enumerate(self.ideals)}
        label = (lambda s: ",".join(fp.names(s))) if fp is not None else \
            (lambda s: ",".join(map(str, sorted(s))))
        colored: dict[tuple[int, int], str] = {}
        for c, chain in enumerate(chains):
            ids = [index[frozenset(l)] for l in chain]
            for a, b in zip(ids, ids[1:]):
                colored.setdefault((a, b), colors[c % len(colors)])
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, s in enumerate(self.ideals):
            tag = " START" if i == self.start else " STOP" if i == self.stop else ""
            lines.append(f'  s{i} [label="{{{label(s)}}}{tag}"];')
        for a, b in self.edges:
            style = f' [color={colored[(a, b)]}, penwidth=2]' if (a, b) in colored else ""
            lines.append(f"  s{a} -> s{b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class EnumerationCapExceeded(ValueError):
    pass


def enumerate_staircases(bag: Bag, cap: int = DEFAULT_CAP) -> StaircaseSet:
    """All predecessor-closed sets containing the source and excluding the sink.

    Reverse search: the parent of an ideal is the ideal minus its
    largest-id maximal element, so each ideal is generated exactly once.
    """
    if bag.n > cap:
        raise EnumerationCapExceeded(f"{bag.n} blocks exceed the enumeration cap {cap}")
    pred, succ, sink = bag.pred, bag.succ, bag.sink
    out: list[frozenset[int]] = []
    stack = [frozenset([bag.source])]
    while stack:
        ideal = stack.pop()
        out.append(ideal)
        for v in range(bag.n):
            if v in ideal or v == sink or not all(u in ideal for u in pred[v]):
                continue
            # v must be the largest maximal element of ideal + v
            child = ideal | {v}
            if all(u < v for u in ideal if u not in pred[v]
                   and not any(w in child for w in succ[u])):
                stack.append(child)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return StaircaseSet(tuple(out))


def subset_filter(bag: Bag) -> set[frozenset[int]]:
    """Brute force: test all 2^n subsets for source/sink placement and closure."""
    found = set()
    for mask in range(1 << bag.n):
        s = frozenset(i for i in range(bag.n) if mask >> i & 1)
        if bag.source in s and bag.sink not in s and \
                all(u in s for v in s for u in bag.pred[v]):
            found.add(s)
    return found


def build_hasse(s: StaircaseSet) -> HasseDiagram:
    index = {ideal: i for i, ideal in enumerate(s.ideals)}
    universe = frozenset().union(*s.ideals)
    edges = []
    for i, ideal in enumerate(s.ideals):
        for v in sorted(universe - ideal):
            j = index.get(ideal | {v})
            if j is not None:
                edges.append((i, j))
    start = min(range(len(s.ideals)), key=lambda i: len(s.ideals[i]))
    stop = max(range(len(s.ideals)), key=lambda i: len(s.ideals[i]))
    return HasseDiagram(s.ideals, tuple(edges), start, stop)


def maximal_path_lengths(h: HasseDiagram) -> set[int]:
    """Edge counts of every START-to-STOP path (memoised over the DAG)."""
    succ: dict[int, list[int]] = {}
    for a, b in h.edges:
        succ.setdefault(a, []).append(b)
    memo: dict[int, set[int]] = {}

    def walk(i: int) -> set[int]:
        if i not in memo:
            nxt = succ.get(i, [])
            memo[i] = {0} if not nxt else {1 + d for j in nxt for d in walk(j)}
        return memo[i]
    return walk(h.start)


def oracle_best(s: StaircaseSet, fp: Floorplan, bag: Bag, nets: Sequence[Net],
                params: Params) -> CutEval:
    return best_cut(evaluate_cut(fp, bag, nets, ideal, params) for ideal in s.ideals)


def verify_chain(chain, diagram: HasseDiagram) -> bool:
    """True iff the chain's left sets trace a START-to-STOP path of the diagram."""
    lefts = [frozenset(c.left if isinstance(c, CutEval) else c)
             for c in (chain.cuts if hasattr(chain, "cuts") else chain)]
    index = {s: i for i, s in enumerate(diagram.ideals)}
    if not lefts or any(l not in index for l in lefts):
        return False
    ids = [index[l] for l in lefts]
    if ids[0] != diagram.start or ids[-1] != diagram.stop:
        return False
    edges = set(diagram.edges)
    return all((a, b) in edges for a, b in zip(ids, ids[1:]))
