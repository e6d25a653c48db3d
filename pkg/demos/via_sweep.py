"""
Via count against the balance weight
====================================

Sweep gamma for each beta and mode on one generated instance and print the
via curves. The CSV written at the end can be plotted with any tool.
"""

from pathlib import Path

from staircut import GenSpec
from staircut.report import SweepConfig, run_sweep, write_report

cfg = SweepConfig(inputs=[GenSpec(60, seed=2, n_nets=320)], instances_per_circuit=1, seed=0)
report = run_sweep(cfg)

for (circuit, inst, mode, beta), pts in sorted(report.curves("total_vias").items()):
    vals = " ".join(f"{v:4d}" for _, v in pts)
    print(f"{mode:5} beta={beta:.1f}  {vals}")

write_report(report, Path("via_sweep_out"))
print("rows:", len(report.rows), "errors:", len(report.errors))
