"""
Recursive bipartitioning and via estimates
==========================================

A 100-block floorplan is cut recursively, alternating increasing and
decreasing staircases. Nets are routed at the node that first splits them,
which gives a via count and a congestion figure per mode.
"""

from pathlib import Path

from staircut import GenSpec, Params, build_msc_tree, generate_floorplan, route_nets, tree_metrics
from staircut.router import via_summary
from staircut.search import Mode
from staircut.svg import render_svg

fp = generate_floorplan(GenSpec(100, seed=1, n_nets=576))
params = Params(0.4, 0.1)

for mode in Mode:
    tree = build_msc_tree(fp, params, mode, seed=0)
    m = tree_metrics(tree)
    routed, cong = route_nets(tree, fp)
    v = via_summary(routed)
    print(f"{mode.value:5} height={m.height} balr={m.balr_mean:.3f} "
          f"bend ratio={m.bend_ratio_mean:.3f} vias={v['total_vias']} "
          f"max congestion={cong.maximum:.3f} empty staircases={len(cong.degenerate)}")

# per-level statistics of the last tree
for row in m.per_level:
    print(row)

out = Path("tree_and_routing.svg")
out.write_text(render_svg(fp, tree))
print("wrote", out)
