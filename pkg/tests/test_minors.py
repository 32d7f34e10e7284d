import random

import pytest

from degencount.elimination import dtd_graph
from degencount.families import all_graphs, complete, complete_bipartite, connected_graphs_upto, cycle, path
from degencount.graph import Graph, canonical_label, is_isomorphic
from degencount.minors import (MinorClosure, catalog_text, check_model, derive_h1_h2, dtd_le2_by_obstructions,
                               induced_minor_contains, induced_minor_model, minimal_dtd3_graphs,
                               obstruction_catalog, obstructions, parse_catalog)


def test_induced_minor_examples():
    assert induced_minor_contains(cycle(6), cycle(6))
    model = induced_minor_model(cycle(6), complete(3))
    assert model is not None and check_model(cycle(6), complete(3), model)
    assert not induced_minor_contains(path(7), cycle(6))


def test_induced_minor_needs_exact_adjacency():
    # K4 minus an edge has a K3 subgraph but contracting or deleting cannot give C4
    k4e = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert not induced_minor_contains(k4e, cycle(4))
    # a star has no induced P4 minor even though it has many edges
    assert not induced_minor_contains(Graph(6, [(0, i) for i in range(1, 6)]), path(4))


def test_derive_h1_h2_gives_two_p7_supergraphs():
    h1, h2 = derive_h1_h2()
    assert not is_isomorphic(h1, h2)
    for h in (h1, h2):
        assert h.n == 7 and h.m == 7
        assert dtd_graph(h) == 3
        assert not induced_minor_contains(h, cycle(6))
        assert any(is_isomorphic(Graph(7, [e for e in h.edges() if e != drop]), path(7)) for drop in h.edges())


def test_packaged_catalog_matches_derivation():
    cat = obstruction_catalog()
    h1, h2 = derive_h1_h2()
    assert [n for n, _ in obstructions()] == ["C6", "P7", "H1", "H2"]
    assert canonical_label(cat["H1"]) == canonical_label(h1)
    assert canonical_label(cat["H2"]) == canonical_label(h2)
    again = parse_catalog(catalog_text(h1, h2))
    assert {k: canonical_label(v) for k, v in again.items()} == {k: canonical_label(v) for k, v in cat.items()}


def test_dtd_le2_by_obstructions_examples():
    assert dtd_le2_by_obstructions(cycle(5)) and dtd_graph(cycle(5)) <= 2
    assert not dtd_le2_by_obstructions(cycle(6))
    assert dtd_le2_by_obstructions(complete_bipartite(3, 4))


def test_closure_agrees_with_branch_set_search():
    pats = dict(obstructions())
    pats["C4"] = cycle(4)
    pats["P5"] = path(5)
    closure = MinorClosure(pats)
    rng = random.Random(3)
    corpus = connected_graphs_upto(6) + rng.sample(list(all_graphs(7, connected=True)), 120)
    for g in corpus:
        direct = frozenset(name for name, p in pats.items() if induced_minor_contains(g, p))
        assert closure.contained(g) == direct


@pytest.mark.slow
def test_minimal_dtd3_graphs_up_to_seven_vertices():
    found = minimal_dtd3_graphs(7)
    labels = {canonical_label(g) for g in found}
    assert canonical_label(cycle(6)) in labels and canonical_label(path(7)) in labels
    h1, h2 = derive_h1_h2()
    assert canonical_label(h1) in labels and canonical_label(h2) in labels
    # the set disagrees with a four-graph characterization: more than four minimal graphs exist
    assert len(found) == 16
