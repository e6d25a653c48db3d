"""
Staircases on a 2x2 floorplan
=============================

Four unit blocks, two nets. We build the adjacency graph, list every
monotone staircase, score each one and let the three searches pick.
"""

from staircut import Params, build_bag, make_floorplan
from staircut.cut import boundary_polyline, evaluate_cut
from staircut.oracle import enumerate_staircases
from staircut.search import Mode, bipartition

# A B
# C D
fp = make_floorplan(2, 2, [("A", 0, 1, 1, 1), ("B", 1, 1, 1, 1),
                           ("C", 0, 0, 1, 1), ("D", 1, 0, 1, 1)],
                    [("n1", ["A", "D"]), ("n2", ["C", "D"])])

# increasing staircases grow from the top-left block
bag = build_bag(fp)
print(bag.to_dot(fp))

# every valid left set, with its score at gamma=0.4, beta=0.3
params = Params(0.4, 0.3)
for left in enumerate_staircases(bag).ideals:
    ev = evaluate_cut(fp, bag, fp.nets, left, params)
    pts = boundary_polyline(fp, left, bag=bag).points()
    name = "{" + ",".join(fp.names(left)) + "}"
    print(f"{name:<10} gain={float(ev.gain):.4f} "
          f"balr={float(ev.balr):.3f} cut nets={ev.k_c} bends={ev.z}  {pts}")

# the searches follow one chain each (RAND follows one per trial)
for mode in Mode:
    res = bipartition(mode, bag, fp, fp.nets, params, seed=1)
    chains = [" -> ".join("".join(fp.names(l)) for l in ch.lefts) for ch in res.chains]
    print(mode.value, chains, "best:", fp.names(res.best.left))
