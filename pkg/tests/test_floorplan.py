import copy
import json

import pytest
from hypothesis import given, settings, strategies as st

from staircut.bookshelf import import_bookshelf
from staircut.floorplan import FloorplanError, load_floorplan, save_floorplan, stats, validate
from staircut.generator import GenSpec, generate_floorplan

from conftest import F4_DOC, f2, f4


def test_load_f4(f4_text):
    fp = load_floorplan(f4_text)
    assert (fp.n, fp.k) == (4, 2)
    assert [b.name for b in fp.blocks] == ["A", "B", "C", "D"]
    assert fp.nets[0].members == fp.ids("AD")
    assert fp == f4()


def test_overlap_is_named():
    doc = copy.deepcopy(F4_DOC)
    doc["unit"] = 0.5
    doc["blocks"] = [{"name": "A", "x": 0, "y": 0, "w": 1, "h": 1},
                     {"name": "B", "x": 0.5, "y": 0, "w": 1, "h": 1}]
    doc["nets"] = []
    with pytest.raises(FloorplanError, match="'A' and 'B' overlap"):
        load_floorplan(json.dumps(doc))


def test_short_net_is_named():
    doc = copy.deepcopy(F4_DOC)
    doc["nets"].append({"name": "n3", "blocks": ["A"]})
    with pytest.raises(FloorplanError, match="n3"):
        load_floorplan(json.dumps(doc))


@pytest.mark.parametrize("mutate, pattern", [
    (lambda d: d.update(extra=1), "unknown key"),
    (lambda d: d["blocks"][0].update(rot=90), "unknown key"),
    (lambda d: d["nets"][0]["blocks"].append("zz"), "unknown block 'zz'"),
    (lambda d: d["blocks"][0].update(x=0.25), "not a multiple"),
    (lambda d: d["blocks"][0].update(x=5), "outside"),
])
def test_rejects_bad_documents(mutate, pattern):
    doc = copy.deepcopy(F4_DOC)
    mutate(doc)
    with pytest.raises(FloorplanError, match=pattern):
        load_floorplan(json.dumps(doc))


def test_parse_error_has_position():
    with pytest.raises(FloorplanError, match="line 2"):
        load_floorplan('{"unit": 1,\n "bbox": }')


def test_validate_modes():
    fp = f4()
    assert validate(fp, "mosaic").ok
    assert validate(fp, "mosaic").uncovered_area == 0
    holed = fp.subfloorplan([0, 1, 2])
    holed = type(fp)(fp.bbox, holed.blocks, (), fp.unit)
    rep = validate(holed, "mosaic")
    assert not rep.ok and rep.uncovered_area == 1.0
    assert validate(holed, "packed").ok


def test_stats():
    assert stats(f4()) == {"n": 4, "k": 2, "avg_net_degree": 2.0}
    assert stats(f2()) == {"n": 2, "k": 0, "avg_net_degree": 0.0}


def test_generate_two_blocks():
    fp = generate_floorplan(GenSpec(2, seed=1))
    assert fp.n == 2
    assert validate(fp, "mosaic").ok


def test_generate_large_is_mosaic():
    fp = generate_floorplan(GenSpec(300, seed=7, n_nets=1632))
    assert (fp.n, fp.k) == (300, 1632)
    assert sum(b.area for b in fp.blocks) == fp.bbox.area
    assert validate(fp, "mosaic").ok
    assert all(2 <= net.degree for net in fp.nets)


def test_generate_is_deterministic():
    spec = GenSpec(50, seed=3, n_nets=100)
    assert save_floorplan(generate_floorplan(spec)) == save_floorplan(generate_floorplan(spec))
    assert generate_floorplan(spec) != generate_floorplan(GenSpec(50, seed=4, n_nets=100))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 80), seed=st.integers(0, 2**63), k=st.integers(0, 30),
       lo=st.floats(0.05, 0.5))
def test_generator_mosaic_and_roundtrip(n, seed, k, lo):
    fp = generate_floorplan(GenSpec(n, seed=seed, n_nets=k, aspect_range=(lo, 1 - lo)))
    rep = validate(fp, "mosaic")
    assert rep.ok, rep
    assert load_floorplan(save_floorplan(fp)) == fp


BLOCKS = """UCSC blocks 1.0
# comment line
NumSoftRectangularBlocks : 0
NumHardRectilinearBlocks : 3
NumTerminals : 1

bk1 hardrectilinear 4 (0, 0) (0, 10) (20, 10) (20, 0)
bk2 hardrectilinear 4 (0, 0) (0, 10) (10, 10) (10, 0)
bk3 hardrectilinear 4 (0, 0) (0, 20) (10, 20) (10, 0)
p1 terminal
"""
PL = """UCLA pl 1.0

bk1 0 10
bk2 0 0
bk3 10 0 : E
p1 0 0
"""
NETS = """UCLA nets 1.0
NumNets : 3
NumPins : 7
NetDegree : 3  na
bk1 B : %0.0 %0.0
bk2 B
p1 B
NetDegree : 2
bk3 B
p1 B
NetDegree : 2 nc
bk2 B
bk3 B
"""


def test_bookshelf_import():
    fp = import_bookshelf(BLOCKS, PL, NETS, grid="1")
    assert fp.n == 3
    # the terminal-only second net keeps one block and is removed
    assert [net.name for net in fp.nets] == ["na", "nc"]
    assert stats(fp) == {"n": 3, "k": 2, "avg_net_degree": 2.0}
    # bk3 is rotated: 20 wide, 10 high
    b3 = fp.block_by_name("bk3")
    assert (b3.w, b3.h) == (20, 10)


def test_bookshelf_unknown_name():
    with pytest.raises(FloorplanError, match="zz"):
        import_bookshelf(BLOCKS, PL, NETS + "NetDegree : 2\nbk1 B\nzz B\n", grid="1")


def test_bookshelf_missing_placement():
    with pytest.raises(FloorplanError, match="bk3"):
        import_bookshelf(BLOCKS, PL.replace("bk3 10 0 : E\n", ""), NETS, grid="1")
