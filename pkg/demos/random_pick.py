"""
Uniform neighbour choice
========================

The randomized search picks among a block's successors uniformly, so the
picked position averages (p + 1) / 2.
"""

from staircut import build_bag, make_floorplan, neighbor_pick_distribution

for p in (2, 4, 9):
    # one tall block with p unit blocks to its right
    blocks = [("A", 0, 0, 1, p)] + [(f"S{i}", 1, i, 1, 1) for i in range(p)]
    bag = build_bag(make_floorplan(2, p, blocks))
    hist = neighbor_pick_distribution(bag, bag.source, 1_000_000, seed=p)
    print(f"p={p}: mean={hist.mean:.4f} expected={(p + 1) / 2}  counts={hist.counts.tolist()}")
