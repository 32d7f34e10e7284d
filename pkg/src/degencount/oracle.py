"""Brute-force ground truth for hom, sub and ind counts.

These enumerate maps vertex by vertex and only check edges between vertices
that are already placed.  Guards refuse work above a fixed budget instead of
sampling.
"""
from __future__ import annotations

from itertools import combinations
from math import comb, perm

from .graph import Graph, OrientedDag, automorphism_count, canonical_label

GUARD = 10 ** 9


class OracleGuardExceeded(RuntimeError):
    pass


def _guard(work: int, what: str) -> None:
    if work > GUARD:
        raise OracleGuardExceeded(f"{what}: {work} candidate maps exceeds the guard of {GUARD}")


def _search_order(pattern: Graph) -> list[int]:
    """Breadth-first order per component, so most vertices have a placed neighbour."""
    order: list[int] = []
    seen = set()
    for root in range(pattern.n):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(pattern.adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _count_maps(pattern: Graph, host: Graph, injective: bool) -> int:
    k, n = pattern.n, host.n
    hm = host.masks
    full = (1 << n) - 1
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    placed_nbrs = [[pos[u] for u in pattern.adj[v] if pos[u] < pos[v]] for v in order]
    img = [0] * k

    def rec(i: int, used: int) -> int:
        if i == k:
            return 1
        cand = full
        for j in placed_nbrs[i]:
            cand &= hm[img[j]]
        if injective:
            cand &= ~used
        total = 0
        while cand:
            low = cand & -cand
            img[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
            cand ^= low
        return total

    return rec(0, 0)


def brute_hom(pattern: Graph, host: Graph) -> int:
    """Edge-preserving maps V(pattern) -> V(host), placed one vertex at a time;
    each new image must be adjacent to the images of placed neighbours."""
    _guard(host.n ** pattern.n, "brute_hom")
    return _count_maps(pattern, host, injective=False)


def brute_hom_dag(pattern: OrientedDag, host: OrientedDag) -> int:
    """Maps sending every pattern arc u->v onto a host arc img(u)->img(v)."""
    k, n = pattern.n, host.n
    _guard(n ** k, "brute_hom_dag")
    outs = [[w for w in pattern.out[v] if w < v] for v in range(k)]
    ins = [[w for w in pattern.inc[v] if w < v] for v in range(k)]
    hout = host.out
    img = [0] * k

    def rec(i: int) -> int:
        if i == k:
            return 1
        total = 0
        for x in range(n):
            if all(img[w] in hout[x] for w in outs[i]) and all(x in hout[img[w]] for w in ins[i]):
                img[i] = x
                total += rec(i + 1)
        return total

    return rec(0)


def brute_inj(pattern: Graph, host: Graph) -> int:
    """Injective edge-preserving maps."""
    k, n = pattern.n, host.n
    if k > n:
        return 0
    _guard(perm(n, k), "brute_inj")
    return _count_maps(pattern, host, injective=True)


def brute_sub(pattern: Graph, host: Graph) -> int:
    """Copies of ``pattern`` in ``host``: injective homs / automorphisms."""
    _guard(comb(host.n, pattern.n) * perm(pattern.n, pattern.n), "brute_sub")
    inj = brute_inj(pattern, host)
    aut = automorphism_count(pattern)
    if inj % aut:
        raise AssertionError("injective count not divisible by the automorphism count")
    return inj // aut


def brute_sub_by_edges(pattern: Graph, host: Graph) -> int:
    """Copies counted as edge subsets of the host isomorphic to ``pattern``
    (patterns without isolated vertices only)."""
    if any(pattern.degree(v) == 0 for v in range(pattern.n)):
        raise ValueError("brute_sub_by_edges needs a pattern without isolated vertices")
    target = canonical_label(pattern)
    hedges = host.edges()
    _guard(comb(len(hedges), pattern.m), "brute_sub_by_edges")
    total = 0
    for pick in combinations(hedges, pattern.m):
        verts = sorted({x for e in pick for x in e})
        if len(verts) != pattern.n:
            continue
        idx = {v: i for i, v in enumerate(verts)}
        g = Graph(len(verts), [(idx[a], idx[b]) for a, b in pick])
        total += canonical_label(g) == target
    return total


def brute_ind(pattern: Graph, host: Graph) -> int:
    """k-subsets of host vertices whose induced subgraph is isomorphic to ``pattern``."""
    k, n = pattern.n, host.n
    if k > n:
        return 0
    _guard(comb(n, k), "brute_ind")
    target = canonical_label(pattern)
    want_m = pattern.m
    masks = host.masks
    seen: dict[tuple, bool] = {}
    chosen: list[int] = []
    local: list[int] = []

    def rec(start: int, edges: int) -> int:
        if len(chosen) == k:
            if edges != want_m:
                return 0
            key = tuple(local)
            hit = seen.get(key)
            if hit is None:
                hit = canonical_label(Graph.from_masks(key)) == target
                seen[key] = hit
            return int(hit)
        total = 0
        i = len(chosen)
        for x in range(start, n - (k - i) + 1):
            row = 0
            for j, y in enumerate(chosen):
                if masks[x] >> y & 1:
                    row |= 1 << j
            e = edges + row.bit_count()
            if e > want_m:
                continue
            for j in range(i):
                if row >> j & 1:
                    local[j] |= 1 << i
            chosen.append(x)
            local.append(row)
            total += rec(x + 1, e)
            chosen.pop()
            local.pop()
            for j in range(i):
                if row >> j & 1:
                    local[j] &= ~(1 << i)
        return total

    return rec(0, 0)
