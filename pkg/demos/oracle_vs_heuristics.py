"""
How close do the greedy searches get?
=====================================

On small floorplans every staircase can be listed, so the best one is
known. Here we count how often each search finds it.
"""

from collections import Counter

from staircut import GenSpec, Params, build_bag, generate_floorplan
from staircut.oracle import build_hasse, enumerate_staircases, oracle_best
from staircut.search import Mode, bipartition

params = Params(0.4, 0.1)
hits = Counter()
gaps = {m: [] for m in Mode}
for seed in range(40):
    fp = generate_floorplan(GenSpec(10, seed=seed, n_nets=54))
    bag = build_bag(fp)
    s = enumerate_staircases(bag)
    best = oracle_best(s, fp, bag, fp.nets, params)
    for mode in Mode:
        found = bipartition(mode, bag, fp, fp.nets, params, seed=seed).best
        hits[mode] += found.gain == best.gain
        gaps[mode].append(float(best.gain - found.gain))

for mode in Mode:
    print(f"{mode.value:5} optimal in {hits[mode]}/40, mean gap {sum(gaps[mode]) / 40:.4f}")

# the lattice of one instance; paste into graphviz to view it
fp = generate_floorplan(GenSpec(6, seed=3))
bag = build_bag(fp)
res = bipartition(Mode.RAND, bag, fp, fp.nets, params, seed=0, trials=2)
print(build_hasse(enumerate_staircases(bag)).to_dot(fp, [ch.lefts for ch in res.chains]))
