"""Batch experiments over (gamma, beta) grids, modes and floorplan instances."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bookshelf import load_bookshelf
from .cut import Params
from .floorplan import Floorplan, load_floorplan
from .generator import GenSpec, generate_floorplan
from .router import ROUTER_LABEL, RouteModel, route_nets, via_summary
from .search import RNG_ALGORITHM, Mode
from .tree import build_msc_tree, tree_metrics


def grid(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 10) for i in range(count)]


DEFAULT_GAMMAS = grid(0.1, 0.7, 0.1)
DEFAULT_BETAS = grid(0.0, 0.3, 0.1)

COLUMNS = ["circuit", "instance", "mode", "gamma", "beta", "balr_mean", "bend_ratio_mean",
           "netcut_ratio_mean", "gain_mean", "root_gain", "tree_height", "nodes",
           "total_vias", "total_length", "max_congestion", "wall_time",
           "router", "rng", "seed", "error"]


@dataclass
class SweepConfig:
    """Inputs are floorplan paths, ``{"bookshelf": stem}``, ``{"gen": {...}}`` or GenSpec objects."""
    inputs: list = field(default_factory=list)
    instances_per_circuit: int = 4
    gamma_grid: list[float] = field(default_factory=lambda: list(DEFAULT_GAMMAS))
    beta_grid: list[float] = field(default_factory=lambda: list(DEFAULT_BETAS))
    modes: list[str] = field(default_factory=lambda: ["BFS", "DFS", "RAND"])
    seed: int = 0
    route: bool = True
    model: RouteModel = field(default_factory=RouteModel)
    trials: int = 3
    timing: bool = False
    jobs: int = 1

    def __post_init__(self):
        for v in list(self.gamma_grid) + list(self.beta_grid):
            if not 0 <= v <= 1:
                raise ValueError(f"grid value {v} outside [0, 1]")
        self.modes = [Mode(m).value for m in self.modes]
        if isinstance(self.model, dict):
            self.model = RouteModel(**self.model)

    @classmethod
    def from_json(cls, text: str, base: Path | None = None) -> "SweepConfig":
        doc = json.loads(text)
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown sweep config key(s) {sorted(unknown)}")
        if base is not None:
            doc["inputs"] = [str(base / p) if isinstance(p, str) else p
                             for p in doc.get("inputs", [])]
        return cls(**doc)

    def pairs(self) -> list[tuple[float, float]]:
        return [(g, b) for b in self.beta_grid for g in self.gamma_grid if g + b <= 1 + 1e-12]


def _gen_spec(d) -> GenSpec:
    if isinstance(d, GenSpec):
        return d
    d = dict(d)
    for key in ("aspect_range", "degree_distribution"):
        if key in d:
            d[key] = tuple(d[key])
    return GenSpec(**d)


def load_instances(item, count: int) -> tuple[str, list[Floorplan]]:
    """Resolve one sweep input to ``(circuit name, instances)``."""
    if isinstance(item, GenSpec) or isinstance(item, dict) and "gen" in item:
        spec = _gen_spec(item if isinstance(item, GenSpec) else item["gen"])
        name = item.get("name") if isinstance(item, dict) else None
        insts = [generate_floorplan(GenSpec(**{**asdict(spec), "seed": spec.seed + i}))
                 for i in range(count)]
        return name or f"gen{spec.n_blocks}", insts
    if isinstance(item, dict) and "bookshelf" in item:
        stem = Path(item["bookshelf"])
        return item.get("name", stem.name), [load_bookshelf(stem, item.get("grid", "0.001"))]
    path = Path(item)
    return path.stem, [load_floorplan(path.read_text())]


def run_cell(fp: Floorplan, mode: str, gamma: float, beta: float, seed: int,
             trials: int = 3, route: bool = True, model: RouteModel | None = None) -> dict:
    """One tree (plus routing) with its averaged metrics; timing covers tree building only."""
    t0 = time.perf_counter()
    tree = build_msc_tree(fp, Params(gamma, beta), mode, seed=seed, trials=trials)
    elapsed = time.perf_counter() - t0
    m = tree_metrics(tree)
    row = {
        "balr_mean": m.balr_mean, "bend_ratio_mean": m.bend_ratio_mean,
        "netcut_ratio_mean": m.netcut_ratio_mean, "gain_mean": m.gain_mean,
        "root_gain": float(tree.cut.gain), "tree_height": m.height, "nodes": m.node_count,
        "wall_time": elapsed,
    }
    if route:
        routed, cong = route_nets(tree, fp, model or RouteModel())
        s = via_summary(routed)
        row.update(total_vias=s["total_vias"], total_length=s["total_length"],
                   max_congestion=cong.maximum, router=ROUTER_LABEL)
    return row


def _cell_job(args):
    circuit, idx, fp, mode, g, b, cfg = args
    base = {"circuit": circuit, "instance": idx, "mode": mode, "gamma": g, "beta": b,
            "rng": RNG_ALGORITHM, "seed": cfg.seed}
    try:
        base.update(run_cell(fp, mode, g, b, cfg.seed, cfg.trials, cfg.route, cfg.model))
    except Exception as exc:   # row-level failure, the sweep continues
        base["error"] = f"{type(exc).__name__}: {exc}"
    return base


@dataclass
class SweepReport:
    rows: list[dict]

    @property
    def errors(self) -> list[dict]:
        return [r for r in self.rows if r.get("error")]

    def to_csv(self, timing: bool = False) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, COLUMNS, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in self.rows:
            out = {}
            for c in COLUMNS:
                v = r.get(c, "")
                if c == "wall_time" and not timing:
                    v = ""
                out[c] = f"{v:.10g}" if isinstance(v, float) else v
            w.writerow(out)
        return buf.getvalue()

    def to_json(self, timing: bool = False) -> str:
        rows = [{c: r.get(c) for c in COLUMNS if timing or c != "wall_time"} for r in self.rows]
        return json.dumps({"columns": [c for c in COLUMNS if timing or c != "wall_time"],
                           "rows": rows}, indent=1)

    def curves(self, metric: str = "total_vias") -> dict:
        """``{(circuit, instance, mode, beta): [(gamma, value), ...]}`` for plotting."""
        out: dict = {}
        for r in self.rows:
            if r.get("error"):
                continue
            key = (r["circuit"], r["instance"], r["mode"], r["beta"])
            out.setdefault(key, []).append((r["gamma"], r.get(metric)))
        return {k: sorted(v) for k, v in out.items()}

    def summary(self) -> list[dict]:
        """Per (circuit, mode) means over instances and grid pairs."""
        groups: dict = {}
        for r in self.rows:
            if not r.get("error"):
                groups.setdefault((r["circuit"], r["mode"]), []).append(r)
        out = []
        for (circuit, mode), rs in groups.items():
            d = {"circuit": circuit, "mode": mode, "cells": len(rs)}
            for c in ("balr_mean", "bend_ratio_mean", "netcut_ratio_mean", "gain_mean", "tree_height"):
                d[c] = sum(r[c] for r in rs) / len(rs)
            out.append(d)
        return out


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """Rows follow input order, then instance, mode and grid pair."""
    slots: list = []          # a job tuple, or a ready-made error row
    for item in cfg.inputs:
        try:
            circuit, insts = load_instances(item, cfg.instances_per_circuit)
        except Exception as exc:
            slots.append({"circuit": str(item), "instance": "", "mode": "", "gamma": "",
                          "beta": "", "rng": RNG_ALGORITHM, "seed": cfg.seed,
                          "error": f"{type(exc).__name__}: {exc}"})
            continue
        for idx, fp in enumerate(insts):
            for mode in cfg.modes:
                for g, b in cfg.pairs():
                    slots.append((circuit, idx, fp, mode, g, b, cfg))
    jobs = [s for s in slots if isinstance(s, tuple)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            done = iter(list(ex.map(_cell_job, jobs, chunksize=4)))
    else:
        done = map(_cell_job, jobs)
    return SweepReport([next(done) if isinstance(s, tuple) else s for s in slots])


def write_report(report: SweepReport, outdir: Path, timing: bool = False) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "report.csv").write_text(report.to_csv(timing))
    (outdir / "report.json").write_text(report.to_json(timing))


# ---------------------------------------------------------------------------
# runtime table

@dataclass
class BenchTable:
    modes: list[str]
    rows: list[dict]          # {"circuit", mode: seconds, ...}
    geo_mean: dict            # mode -> geometric mean normalised to the first mode

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["circuit"] + self.modes)
        for r in self.rows:
            w.writerow([r["circuit"]] + [f"{r[m]:.4f}" for m in self.modes])
        w.writerow(["Normalized Geo Mean"] + [f"{self.geo_mean[m]:.3f}" for m in self.modes])
        return buf.getvalue()


def bench(cfg: SweepConfig, gamma: float = 0.4, beta: float = 0.1) -> BenchTable:
    """Wall time of the full hierarchy per (circuit, mode), averaged over instances.

    Parsing and generation are outside the timed region.
    """
    rows = []
    for item in cfg.inputs:
        circuit, insts = load_instances(item, cfg.instances_per_circuit)
        row = {"circuit": circuit}
        for mode in cfg.modes:
            times = []
            for fp in insts:
                t0 = time.perf_counter()
                build_msc_tree(fp, Params(gamma, beta), mode, seed=cfg.seed, trials=cfg.trials)
                times.append(time.perf_counter() - t0)
            row[mode] = sum(times) / len(times)
        rows.append(row)
    geo = {}
    for m in cfg.modes:
        logs = [math.log(r[m]) for r in rows]
        geo[m] = math.exp(sum(logs) / len(logs)) if logs else float("nan")
    ref = geo[cfg.modes[0]] if cfg.modes else 1.0
    return BenchTable(list(cfg.modes), rows, {m: g / ref for m, g in geo.items()})
