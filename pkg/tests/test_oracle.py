import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from staircut.bag import MDS, MIS, build_bag
from staircut.cut import Params
from staircut.oracle import (EnumerationCapExceeded, build_hasse, enumerate_staircases,
                             maximal_path_lengths, oracle_best, subset_filter, verify_chain)
from staircut.search import Mode, bipartition

from conftest import f4, mosaic


def antichain_count(bag):
    """Ideals containing the source and not the sink are the ideals of the poset
    on the remaining blocks, which correspond one-to-one with its antichains."""
    dg = nx.DiGraph(bag.edges)
    dg.add_nodes_from(range(bag.n))
    inner = dg.subgraph(set(range(bag.n)) - {bag.source, bag.sink})
    closure = nx.transitive_closure_dag(nx.DiGraph(inner))
    return sum(1 for _ in nx.antichains(closure))


def test_f4_enumeration():
    fp = f4()
    s = enumerate_staircases(build_bag(fp))
    assert ["".join(fp.names(i)) for i in s.ideals] == ["A", "AB", "AC", "ABC"]
    h = build_hasse(s)
    assert h.start == 0 and h.stop == 3
    assert sorted(h.edges) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert maximal_path_lengths(h) == {2}


def test_f4_oracle_best():
    fp = f4()
    bag = build_bag(fp)
    best = oracle_best(enumerate_staircases(bag), fp, bag, fp.nets, Params(0.4, 0.3))
    assert fp.names(best.left) == ["A", "B"]
    assert float(best.gain) == pytest.approx(0.85, abs=1e-12)


def test_verify_chain():
    fp = f4()
    bag = build_bag(fp)
    h = build_hasse(enumerate_staircases(bag))
    res = bipartition(Mode.BFS, bag, fp, fp.nets, Params())
    assert verify_chain(res.chains[0], h)
    A, B, C = fp.ids("ABC")
    assert verify_chain([[A], [A, C], [A, B, C]], h)
    assert not verify_chain([[A], [A, B, C]], h)
    assert not verify_chain([[A], [A, B]], h)


def test_hasse_dot():
    fp = f4()
    h = build_hasse(enumerate_staircases(build_bag(fp)))
    dot = h.to_dot(fp, chains=[[fp.ids("A"), fp.ids("AB"), fp.ids("ABC")]])
    assert '{A,B,C} STOP' in dot and "color=blue" in dot


def test_cap():
    fp = mosaic(25, 0, nets=0)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_staircases(build_bag(fp))
    assert enumerate_staircases(build_bag(fp), cap=25).count > 0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 12), seed=st.integers(0, 10**9), direction=st.sampled_from([MIS, MDS]))
def test_enumeration_matches_brute_force(n, seed, direction):
    bag = build_bag(mosaic(n, seed, nets=0), direction)
    s = enumerate_staircases(bag)
    assert len(set(s.ideals)) == s.count
    assert set(s.ideals) == subset_filter(bag)
    assert s.count == antichain_count(bag)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 10), seed=st.integers(0, 10**9))
def test_every_chain_is_a_hasse_path(n, seed):
    fp = mosaic(n, seed)
    bag = build_bag(fp)
    s = enumerate_staircases(bag)
    h = build_hasse(s)
    assert maximal_path_lengths(h) == {n - 2}
    best = oracle_best(s, fp, bag, fp.nets, Params(0.4, 0.1))
    for mode in Mode:
        res = bipartition(mode, bag, fp, fp.nets, Params(0.4, 0.1), seed=seed, trials=2)
        assert all(verify_chain(ch, h) for ch in res.chains)
        assert best.gain >= res.best.gain
