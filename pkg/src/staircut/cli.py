"""Command line entry point: ``staircut {gen,sweep,render,bench,oracle}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .bag import build_bag
from .cut import Params
from .floorplan import load_floorplan, save_floorplan, stats
from .generator import GenSpec, generate_floorplan
from .oracle import build_hasse, enumerate_staircases, oracle_best
from .report import SweepConfig, bench, grid, load_instances, run_sweep, write_report
from .router import RouteModel, route_nets, routed_to_json
from .search import Mode, bipartition
from .svg import render_svg
from .tree import build_msc_tree, tree_to_json


def _grid_arg(text: str) -> list[float]:
    """``0.1:0.7:0.1`` or a comma list."""
    if ":" in text:
        lo, hi, step = (float(t) for t in text.split(":"))
        return grid(lo, hi, step)
    return [float(t) for t in text.split(",") if t]


def _modes_arg(text: str) -> list[str]:
    return [Mode(m.strip().upper()).value for m in text.split(",") if m.strip()]


def cmd_gen(args) -> int:
    fp = generate_floorplan(GenSpec(args.blocks, seed=args.seed, n_nets=args.nets))
    text = save_floorplan(fp)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text + "\n")
    return 0


def _sweep_config(args) -> SweepConfig:
    if args.config:
        path = Path(args.config)
        cfg = SweepConfig.from_json(path.read_text(), base=path.parent)
    else:
        cfg = SweepConfig()
    if args.inputs:
        cfg.inputs = list(cfg.inputs) + list(args.inputs)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.modes:
        cfg.modes = _modes_arg(args.modes)
    if args.gamma:
        cfg.gamma_grid = _grid_arg(args.gamma)
    if args.beta:
        cfg.beta_grid = _grid_arg(args.beta)
    if args.instances is not None:
        cfg.instances_per_circuit = args.instances
    if getattr(args, "jobs", None):
        cfg.jobs = args.jobs
    return cfg


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    if args.timing:
        cfg.timing = True
    report = run_sweep(cfg)
    out = Path(args.output)
    write_report(report, out, cfg.timing)
    if args.svg:
        for item in cfg.inputs:
            try:
                circuit, insts = load_instances(item, cfg.instances_per_circuit)
            except Exception:
                continue
            for i, fp in enumerate(insts):
                g, b = cfg.pairs()[0]
                tree = build_msc_tree(fp, Params(g, b), cfg.modes[0], seed=cfg.seed)
                (out / f"{circuit}_{i}.svg").write_text(render_svg(fp, tree))
    for err in report.errors:
        print(f"error: {err['circuit']} {err.get('mode', '')}: {err['error']}", file=sys.stderr)
    print(f"{len(report.rows)} rows written to {out}")
    return 2 if report.errors else 0


def cmd_bench(args) -> int:
    cfg = _sweep_config(args)
    table = bench(cfg, args.gamma_value, args.beta_value)
    text = table.to_csv()
    if args.output:
        Path(args.output).write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_render(args) -> int:
    fp = load_floorplan(Path(args.floorplan).read_text())
    tree = build_msc_tree(fp, Params(args.gamma_value, args.beta_value), args.mode, seed=args.seed)
    svg = render_svg(fp, tree if not args.root_only else [(tree.polyline, tree.stype)])
    Path(args.output).write_text(svg)
    if args.tree_json:
        Path(args.tree_json).write_text(tree_to_json(tree, fp))
    if args.routes:
        routed, cong = route_nets(tree, fp, RouteModel())
        Path(args.routes).write_text(routed_to_json(routed))
        Path(args.routes).with_suffix(".congestion.csv").write_text(cong.to_csv())
    return 0


def cmd_oracle(args) -> int:
    fp = load_floorplan(Path(args.floorplan).read_text())
    params = Params(args.gamma_value, args.beta_value)
    bag = build_bag(fp)
    s = enumerate_staircases(bag, cap=args.cap)
    best = oracle_best(s, fp, bag, fp.nets, params)
    out = {"stats": stats(fp), "staircases": s.count,
           "oracle_best": best.to_dict(fp), "modes": {}}
    chains = []
    for mode in Mode:
        res = bipartition(mode, bag, fp, fp.nets, params, seed=args.seed)
        out["modes"][mode.value] = res.best.to_dict(fp)
        chains.extend(ch.lefts for ch in res.chains)
    if args.dot:
        Path(args.dot).write_text(build_hasse(s).to_dot(fp, chains[:4]))
    print(json.dumps(out, indent=1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="staircut", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random slicing mosaic")
    g.add_argument("--blocks", "-n", type=int, required=True)
    g.add_argument("--nets", "-k", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o")
    g.set_defaults(func=cmd_gen)

    def sweep_args(sp):
        sp.add_argument("inputs", nargs="*", help="native JSON floorplans")
        sp.add_argument("--config", "-c", help="sweep config (JSON)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--modes", help="comma list of BFS,DFS,RAND")
        sp.add_argument("--gamma", help="grid lo:hi:step or comma list")
        sp.add_argument("--beta", help="grid lo:hi:step or comma list")
        sp.add_argument("--instances", type=int)

    s = sub.add_parser("sweep", help="(gamma, beta) grid sweep")
    sweep_args(s)
    s.add_argument("--output", "-o", default="sweep_out")
    s.add_argument("--timing", action="store_true", help="record wall time in the report")
    s.add_argument("--svg", action="store_true", help="also render one SVG per instance")
    s.add_argument("--jobs", "-j", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("bench", help="runtime table per circuit and mode")
    sweep_args(b)
    b.add_argument("--gamma-value", type=float, default=0.4)
    b.add_argument("--beta-value", type=float, default=0.1)
    b.add_argument("--output", "-o")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="render the MSC tree of a floorplan to SVG")
    r.add_argument("floorplan")
    r.add_argument("--output", "-o", required=True)
    r.add_argument("--mode", default="BFS", type=str.upper)
    r.add_argument("--gamma-value", type=float, default=0.4)
    r.add_argument("--beta-value", type=float, default=0.1)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--root-only", action="store_true")
    r.add_argument("--tree-json")
    r.add_argument("--routes", help="write routed nets JSON (and congestion CSV next to it)")
    r.set_defaults(func=cmd_render)

    o = sub.add_parser("oracle", help="exhaustive staircase enumeration for small floorplans")
    o.add_argument("floorplan")
    o.add_argument("--gamma-value", type=float, default=0.4)
    o.add_argument("--beta-value", type=float, default=0.1)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--cap", type=int, default=20)
    o.add_argument("--dot", help="write the Hasse diagram as Graphviz")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
