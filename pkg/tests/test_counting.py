from fractions import Fraction
from math import comb, factorial

from hypothesis import given, settings

from degencount.counting import (Expansion, HomMemo, count_ind, count_sub, ind_expansion, ind_sub_coefficients,
                                 ind_sub_coefficients_labelled, spasm, sub_expansion)
from degencount.families import all_graphs, complete, connected_graphs_upto, cycle, path, random_degenerate
from degencount.graph import Graph, canonical_label
from degencount.oracle import brute_ind, brute_sub
from helpers import graphs


def labels(gs):
    return {canonical_label(g) for g in gs}


def test_spasm_examples():
    assert labels(spasm(complete(3))) == labels([complete(3)])
    assert labels(spasm(path(3))) == labels([path(3), complete(2)])
    assert labels(spasm(cycle(4))) == labels([cycle(4), path(3), complete(2)])


@given(graphs(6))
@settings(max_examples=30, deadline=None)
def test_spasm_is_closed(h):
    top = labels(spasm(h))
    for g in spasm(h):
        assert g.n <= h.n
        assert labels(spasm(g)) <= top


def test_sub_expansion_examples():
    assert sub_expansion(complete(2)).terms == ((complete(2), Fraction(1, 2)),)
    p3 = sub_expansion(path(3))
    assert p3.coefficient(path(3)) == Fraction(1, 2)
    assert p3.coefficient(complete(2)) == Fraction(-1, 2)
    assert len(p3.terms) == 2
    assert sub_expansion(complete(3)).coefficient(complete(3)) == Fraction(1, 6)


def test_p3_count_against_degree_formula():
    g = random_degenerate(30, 3, 12)
    want = sum(g.degree(v) ** 2 for v in range(g.n)) - 2 * g.m
    assert 2 * count_sub(path(3), g) == want


def test_ind_expansion_examples():
    for k in (2, 3, 4):
        assert ind_expansion(complete(k)) == sub_expansion(complete(k))
    g = random_degenerate(20, 2, 6)
    assert count_ind(Graph(2, []), g) == comb(g.n, 2) - g.m
    coeffs = {canonical_label(c): a for c, a in ind_sub_coefficients(Graph(2, [])).values()}
    assert coeffs == {canonical_label(Graph(2, [])): 1, canonical_label(complete(2)): -1}
    p3 = ind_expansion(path(3))
    assert p3.coefficient(complete(3)) < 0


def test_two_routes_for_ind_coefficients():
    for h in connected_graphs_upto(5) + list(all_graphs(4)):
        a = {k: c for k, (_, c) in ind_sub_coefficients(h).items() if c}
        b = {k: c for k, (_, c) in ind_sub_coefficients_labelled(h).items() if c}
        assert a == b


def test_denominators_divide_factorial():
    for h in connected_graphs_upto(5):
        for exp in (sub_expansion(h), ind_expansion(h)):
            for _, c in exp.terms:
                assert factorial(h.n) % c.denominator == 0


def test_counts_match_oracles(small_hosts):
    for g in small_hosts[:3]:
        memo = HomMemo(g)
        for h in connected_graphs_upto(4):
            assert count_sub(h, g, memo) == brute_sub(h, g)
            assert count_ind(h, g, memo) == brute_ind(h, g)


def test_induced_counts_partition_k_subsets(small_hosts):
    for g in small_hosts[:3]:
        memo = HomMemo(g)
        for k in range(1, 5):
            assert sum(count_ind(h, g, memo) for h in all_graphs(k)) == comb(g.n, k)


def test_expansion_text_round_trip():
    for h in (path(4), cycle(5), Graph(3, [(0, 1)])):
        exp = ind_expansion(h)
        assert Expansion.parse(exp.format()) == exp


def test_disconnected_patterns_count_correctly(small_hosts):
    g = small_hosts[0]
    h = Graph(4, [(0, 1), (2, 3)])
    assert count_sub(h, g) == brute_sub(h, g)
    assert count_ind(h, g) == brute_ind(h, g)
