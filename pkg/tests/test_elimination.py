import random

from hypothesis import given, settings

from degencount._kernels import _unique_systems_py, unique_system_keys
from degencount.elimination import (EliminationForest, ForestNode, check_dtd, dtd_dag, dtd_graph,
                                    dtd_graph_reference, explain_forest, private_pairs, validate_forest)
from degencount.families import all_graphs, complete, connected_graphs_upto, cycle, path
from degencount.graph import OrientedDag
from degencount.minors import induced_minor_contains, one_step_reductions
from degencount.orientations import acyclic_orientations
from helpers import alternating_c6, graphs, k34_from_three_side, single_source_k


def leaf(v):
    return ForestNode(v)


def test_validate_forest_examples():
    assert validate_forest(single_source_k(5), EliminationForest((leaf(0),)))
    k34 = k34_from_three_side()
    assert validate_forest(k34, EliminationForest((ForestNode(0, (leaf(1), leaf(2))),)))
    flat = EliminationForest((leaf(0), leaf(1), leaf(2)))
    check = explain_forest(k34, flat)
    assert not check.ok and "component" in check.reason


def test_check_dtd_examples():
    c6 = alternating_c6()
    assert check_dtd(c6, 2) is None
    f = check_dtd(c6, 3)
    assert f is not None and f.depth == 3 and len(f.root_to_leaf_paths()) == 1
    empty = OrientedDag.from_arcs(0, [])
    assert check_dtd(empty, 0) == EliminationForest(())


def test_dtd_dag_examples():
    assert dtd_dag(single_source_k(5))[0] == 1
    assert dtd_dag(k34_from_three_side())[0] == 2
    assert max(dtd_dag(d)[0] for d in acyclic_orientations(path(7))) == 3


def test_dtd_graph_examples():
    assert dtd_graph(cycle(6)) == 3
    assert dtd_graph(complete(6)) == 1
    assert dtd_graph(path(3)) == 2
    assert dtd_graph(path(2)) == 1


@given(graphs(6))
@settings(max_examples=50, deadline=None)
def test_check_dtd_witness_and_monotonicity(h):
    for d in acyclic_orientations(h)[:30]:
        depth, forest = dtd_dag(d)
        assert validate_forest(d, forest) and forest.depth == depth
        for k in range(0, h.n + 1):
            w = check_dtd(d, k)
            if w is None:
                assert k < depth
                assert k == 0 or check_dtd(d, k - 1) is None
            else:
                assert k >= depth and w.depth <= k and validate_forest(d, w)


def test_private_pairs_share_a_root_to_leaf_path():
    for h in connected_graphs_upto(6):
        for d in acyclic_orientations(h):
            pairs = private_pairs(d)
            if not pairs:
                continue
            forest = dtd_dag(d)[1]
            paths = [set(p) for p in forest.root_to_leaf_paths()]
            for u, v, _ in pairs:
                assert any(u in p and v in p for p in paths)


def test_kernel_matches_python_reference():
    for h in connected_graphs_upto(6):
        assert dtd_graph(h) == dtd_graph_reference(h)
    rng = random.Random(5)
    seven = list(all_graphs(7, connected=True))
    for h in rng.sample(seven, 40):
        assert dtd_graph(h) == dtd_graph_reference(h)
        assert sorted(unique_system_keys(h)) == sorted(_unique_systems_py(h))


def test_dtd_monotone_under_one_step_reductions():
    # induced-minor monotonicity on every deletion/contraction of graphs <= 7 vertices
    rng = random.Random(9)
    corpus = connected_graphs_upto(6) + rng.sample(list(all_graphs(7, connected=True)), 60)
    for h in corpus:
        top = dtd_graph(h)
        for r in one_step_reductions(h):
            assert dtd_graph(r) <= top


def test_dtd_monotone_on_sampled_induced_minor_pairs():
    rng = random.Random(17)
    small = connected_graphs_upto(5)
    big = list(all_graphs(6, connected=True))
    hits = 0
    for _ in range(300):
        H, I = rng.choice(big), rng.choice(small)
        if induced_minor_contains(H, I):
            hits += 1
            assert dtd_graph(H) >= dtd_graph(I)
    assert hits > 50


def test_invalid_vertex_in_forest_is_rejected():
    d = single_source_k(3)
    assert not validate_forest(d, EliminationForest((leaf(1),)))
    assert not validate_forest(d, EliminationForest((leaf(7),)))
