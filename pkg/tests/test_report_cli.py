import csv
import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from staircut.cli import main
from staircut.cut import Params, boundary_polyline
from staircut.floorplan import load_floorplan
from staircut.generator import GenSpec
from staircut.report import COLUMNS, SweepConfig, bench, grid, run_sweep
from staircut.svg import render_svg
from staircut.tree import build_msc_tree

from conftest import F4_DOC, f4

NS = "{http://www.w3.org/2000/svg}"


def svg_tags(text):
    root = ET.fromstring(text)
    counts = {}
    for el in root.iter():
        cls = el.get("class")
        counts.setdefault((el.tag.replace(NS, ""), cls), 0)
        counts[(el.tag.replace(NS, ""), cls)] += 1
    return counts


def count(counts, tag, cls=None):
    return sum(v for (t, c), v in counts.items() if t == tag and (cls is None or c == cls))


def test_svg_root_cut():
    fp = f4()
    tree = build_msc_tree(fp, Params(0.4, 0.3))
    c = svg_tags(render_svg(fp, [(tree.polyline, tree.stype)]))
    assert count(c, "rect") == 4
    assert count(c, "polyline") == 1
    assert count(c, "polygon", "bend") == 0


def test_svg_full_tree_and_bends():
    fp = f4()
    c = svg_tags(render_svg(fp, build_msc_tree(fp, Params(0.4, 0.3))))
    assert count(c, "polyline") == 3
    c = svg_tags(render_svg(fp, [boundary_polyline(fp, fp.ids("A"))]))
    assert count(c, "polygon", "bend") == 1


def test_svg_plain():
    text = render_svg(f4(), options={"show_names": False})
    c = svg_tags(text)
    assert count(c, "rect") == 4 and count(c, "text") == 0


def test_grid():
    assert grid(0.1, 0.7, 0.1) == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7]
    assert grid(0.0, 0.3, 0.1) == [0.0, 0.1, 0.2, 0.3]
    with pytest.raises(ValueError):
        grid(0, 1, 0)


def test_pairs_respect_budget():
    cfg = SweepConfig(gamma_grid=[0.5, 0.8, 1.0], beta_grid=[0.0, 0.2])
    assert cfg.pairs() == [(0.5, 0.0), (0.8, 0.0), (1.0, 0.0), (0.5, 0.2), (0.8, 0.2)]


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown"):
        SweepConfig.from_json('{"gammas": [0.1]}')


def small_cfg(**kw):
    base = dict(inputs=[GenSpec(12, seed=1, n_nets=30)], instances_per_circuit=2,
                gamma_grid=[0.2, 0.6], beta_grid=[0.0, 0.1], seed=4)
    base.update(kw)
    return SweepConfig(**base)


def test_sweep_rows_and_determinism():
    rep = run_sweep(small_cfg())
    assert len(rep.rows) == 2 * 3 * 4 and not rep.errors
    assert rep.to_csv() == run_sweep(small_cfg()).to_csv()
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert list(rows[0]) == COLUMNS
    assert all(r["wall_time"] == "" for r in rows)
    assert all(r["router"] == "proxy-router" and r["rng"].startswith("numpy.PCG64") for r in rows)
    curves = rep.curves()
    assert len(curves) == 2 * 3 * 2 and all(len(v) == 2 for v in curves.values())


def test_sweep_parallel_matches_serial():
    assert run_sweep(small_cfg(jobs=2)).to_csv() == run_sweep(small_cfg()).to_csv()


def test_sweep_row_level_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rep = run_sweep(small_cfg(inputs=[str(bad), GenSpec(6, seed=0, n_nets=5)], modes=["BFS"]))
    assert len(rep.errors) == 1 and "bad" in rep.rows[0]["circuit"]
    assert len(rep.rows) == 1 + 2 * 4


def test_bench_table():
    t = bench(small_cfg(instances_per_circuit=1), 0.4, 0.1)
    assert t.geo_mean["BFS"] == 1.0
    assert t.to_csv().splitlines()[0] == "circuit,BFS,DFS,RAND"


# -- CLI -------------------------------------------------------------------

@pytest.fixture
def f4_file(tmp_path):
    p = tmp_path / "f4.json"
    p.write_text(json.dumps(F4_DOC))
    return p


def test_cli_gen(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "-n", "20", "-k", "40", "--seed", "2", "-o", str(out)]) == 0
    fp = load_floorplan(out.read_text())
    assert (fp.n, fp.k) == (20, 40)


def test_cli_sweep(tmp_path, f4_file):
    out = tmp_path / "sw"
    rc = main(["sweep", str(f4_file), "-o", str(out), "--gamma", "0.2,0.4", "--beta", "0,0.1",
               "--modes", "bfs,rand", "--svg", "--timing"])
    assert rc == 0
    rows = list(csv.DictReader((out / "report.csv").open()))
    assert len(rows) == 2 * 4 and all(r["wall_time"] for r in rows)
    assert json.loads((out / "report.json").read_text())["rows"][0]["circuit"] == "f4"
    assert (out / "f4_0.svg").exists()


def test_cli_sweep_config_and_failure(tmp_path, f4_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"inputs": ["f4.json", "missing.json"], "modes": ["DFS"],
                               "gamma_grid": [0.4], "beta_grid": [0.0]}))
    rc = main(["sweep", "-c", str(cfg), "-o", str(tmp_path / "o")])
    assert rc == 2
    rows = list(csv.DictReader((tmp_path / "o" / "report.csv").open()))
    assert [bool(r["error"]) for r in rows] == [False, True]


def test_cli_render_and_oracle(tmp_path, f4_file, capsys):
    svg, tj, routes = tmp_path / "t.svg", tmp_path / "t.json", tmp_path / "r.json"
    assert main(["render", str(f4_file), "-o", str(svg), "--tree-json", str(tj),
                 "--routes", str(routes), "--beta-value", "0.3"]) == 0
    assert count(svg_tags(svg.read_text()), "polyline") == 3
    assert json.loads(tj.read_text())["left"] == ["A", "B"]
    assert (tmp_path / "r.congestion.csv").read_text().startswith("region,demand")
    dot = tmp_path / "h.dot"
    assert main(["oracle", str(f4_file), "--beta-value", "0.3", "--dot", str(dot)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["staircases"] == 4 and doc["oracle_best"]["left"] == ["A", "B"]
    assert set(doc["modes"]) == {"BFS", "DFS", "RAND"}
    assert dot.read_text().startswith("digraph hasse")


def test_cli_bench(tmp_path, f4_file, capsys):
    assert main(["bench", str(f4_file), "--modes", "BFS,DFS"]) == 0
    assert "Normalized Geo Mean" in capsys.readouterr().out


def test_module_entry_point(f4_file):
    r = subprocess.run([sys.executable, "-m", "staircut", "oracle", str(f4_file)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and '"staircases": 4' in r.stdout
