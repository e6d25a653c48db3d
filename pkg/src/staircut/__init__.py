"""Minimal-bend monotone staircase bipartitioning of rectangular floorplans."""
from .bag import MDS, MIS, Bag, BagError, StairDirection, build_bag, check_structure
from .bookshelf import import_bookshelf, load_bookshelf
from .cut import (BalType, CutEval, CutTracker, Params, balance_ratio, boundary_polyline,
                  count_bends, evaluate_cut, gain, is_valid_mscut, partition_nets)
from .floorplan import (Block, Floorplan, FloorplanError, Net, Rect, load_floorplan,
                        make_floorplan, save_floorplan, stats, validate)
from .generator import GenSpec, generate_floorplan
from .oracle import build_hasse, enumerate_staircases, oracle_best, verify_chain
from .router import RouteModel, route_nets, via_summary
from .search import (Mode, SearchResult, bipartition, mscut_bend_bfs, mscut_bend_dfs,
                     mscut_bend_rand, neighbor_pick_distribution)
from .tree import MscNode, build_msc_tree, routing_order, tree_metrics

__all__ = [name for name in dir() if not name.startswith("_")]
