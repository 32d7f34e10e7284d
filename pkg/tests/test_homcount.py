import itertools
import random

import pytest

from degencount.elimination import EliminationForest, ForestNode, dtd_dag
from degencount.families import complete, connected_graphs_upto, cycle, path, random_degenerate
from degencount.graph import Graph, OrientedDag, degeneracy_orientation
from degencount.homcount import (HomStats, InvalidForest, PartialHom, count_hom, count_hom_dag,
                                 extension_enumerate)
from degencount.oracle import brute_hom, brute_hom_dag
from degencount.orientations import acyclic_orientations
from helpers import alternating_c6, single_source_k


def all_forests(d: OrientedDag, limit: int = 50) -> list[EliminationForest]:
    """Every elimination forest, built from plain undirected BFS on residual sub-DAGs."""

    def components(rem: set[int]) -> list[set[int]]:
        comps, left = [], set(rem)
        while left:
            start = left.pop()
            comp, stack = {start}, [start]
            while stack:
                v = stack.pop()
                for w in (d.out[v] | d.inc[v]) & left:
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
            comps.append(comp)
        return comps

    def forests(rem: set[int]) -> list[tuple[ForestNode, ...]]:
        options = []
        for comp in components(rem):
            trees = []
            for s in sorted(comp & d.sources):
                for kids in forests(comp - {s} - d.reach(s)):
                    trees.append(ForestNode(s, kids))
            options.append(trees)
        return [tuple(choice) for choice in itertools.product(*options)][:limit]

    return [EliminationForest(f) for f in forests(set(range(d.n)))]


def hosts(count: int, seed: int, n_range=(6, 12)):
    rng = random.Random(seed)
    return [random_degenerate(rng.randint(*n_range), rng.randint(1, 3), rng.getrandbits(64)) for _ in range(count)]


def test_examples():
    for g in hosts(3, 1):
        hd, _ = degeneracy_orientation(g)
        edge = single_source_k(2)
        assert count_hom_dag(hd, edge, dtd_dag(edge)[1]) == g.m
        pair = OrientedDag.from_arcs(2, [])
        assert count_hom_dag(hd, pair, dtd_dag(pair)[1]) == g.n ** 2
    k4, _ = degeneracy_orientation(complete(4))
    tri = single_source_k(3)
    assert count_hom_dag(k4, tri, dtd_dag(tri)[1]) == 4 == brute_hom_dag(tri, k4)


def test_matches_brute_force_on_every_orientation():
    for g in hosts(4, 2):
        hd, _ = degeneracy_orientation(g)
        for h in connected_graphs_upto(4):
            for d in acyclic_orientations(h):
                forest = dtd_dag(d)[1]
                want = brute_hom_dag(d, hd)
                assert count_hom_dag(hd, d, forest) == want
                assert count_hom_dag(hd, d, forest, restrict_candidates=False) == want


def test_forest_independence():
    g = hosts(1, 3, (10, 12))[0]
    hd, _ = degeneracy_orientation(g)
    most = 0
    for h in [cycle(5), path(5), Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])]:
        for d in acyclic_orientations(h)[::5]:
            forests = all_forests(d)
            most = max(most, len(forests))
            values = {count_hom_dag(hd, d, f) for f in forests}
            assert len(values) == 1
    assert most >= 3


def test_count_hom_matches_brute_force():
    for g in hosts(3, 4):
        for h in connected_graphs_upto(4) + [Graph(3, [(0, 1)]), Graph(2, [])]:
            assert count_hom(h, g) == brute_hom(h, g)


def test_depth_matches_forest_depth():
    g = random_degenerate(200, 2, 5)
    hd, _ = degeneracy_orientation(g)
    for h in [cycle(6), path(5), complete(4)]:
        for d in acyclic_orientations(h)[:20]:
            depth, forest = dtd_dag(d)
            stats = HomStats()
            count_hom_dag(hd, d, forest, stats)
            assert stats.max_depth == depth


def test_auxiliary_words_do_not_grow_with_host():
    c6 = alternating_c6()
    forest = dtd_dag(c6)[1]
    peaks = set()
    for n in (100, 400, 1600):
        hd, _ = degeneracy_orientation(random_degenerate(n, 2, 11))
        stats = HomStats()
        count_hom_dag(hd, c6, forest, stats)
        peaks.add(stats.peak_aux_bytes)
        assert stats.words == 0
    assert len(peaks) == 1


def test_invalid_forest_is_refused_before_counting():
    hd, _ = degeneracy_orientation(cycle(5))
    k34_like = OrientedDag.from_arcs(4, [(0, 3), (1, 3), (2, 3)])
    with pytest.raises(InvalidForest):
        count_hom_dag(hd, k34_like, EliminationForest((ForestNode(0), ForestNode(1), ForestNode(2))))


def test_parallel_roots_give_same_count():
    g = random_degenerate(60, 2, 8)
    assert count_hom(cycle(4), g, workers=2) == count_hom(cycle(4), g)


def test_extension_enumerate_examples():
    hd, _ = degeneracy_orientation(random_degenerate(15, 2, 4))
    edge = single_source_k(2)
    for u in range(hd.n):
        exts = list(extension_enumerate(hd, edge, 0, u, PartialHom.empty(2)))
        assert sorted(e.get(1) for e in exts) == sorted(hd.out[u])
    # everything reachable is already assigned: only v itself is placed
    inward = OrientedDag.from_arcs(3, [(0, 1), (2, 1)])
    u0 = next(u for u in range(hd.n) if hd.out[u])
    w = min(hd.out[u0])
    sigma = PartialHom.empty(3).extend({0: u0, 1: w})
    for u in range(hd.n):
        exts = list(extension_enumerate(hd, inward, 2, u, sigma))
        assert len(exts) == (1 if w in hd.out[u] else 0)
        assert all(e.is_consistent(hd, inward) for e in exts)
    # a host sink cannot start a vertex that still has to reach something
    sink = next(u for u in range(hd.n) if not hd.out[u])
    assert list(extension_enumerate(hd, edge, 0, sink, PartialHom.empty(2))) == []
