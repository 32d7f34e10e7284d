"""Acyclic orientations of pattern graphs and their source/reachability structure."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph import Graph, GraphTooLarge, OrientedDag, _bits, pattern_cap, require_size

MAX_ORIENT_EDGES = 24


def _check_bounds(h: Graph) -> None:
    require_size(h.n, pattern_cap(), "acyclic_orientations")
    if h.m > 2 * pattern_cap():
        raise GraphTooLarge(f"acyclic_orientations: {h.m} edges exceeds the bound of {2 * pattern_cap()}")


def iter_orientation_masks(h: Graph) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(out_masks, reach_masks)`` for every acyclic orientation."""
    yield from orientation_masks(h)


def orientation_masks(h: Graph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All acyclic orientations as ``(out_masks, reach_masks)`` pairs.

    Vertices are inserted in id order.  For vertex ``v`` every split of its
    earlier neighbours into in- and out-neighbours is tried; a split closes a
    directed cycle iff some chosen out-neighbour already reaches a chosen
    in-neighbour, and those splits are cut immediately.  Reachability is
    carried along as bitmasks.
    """
    _check_bounds(h)
    n = h.n
    earlier = [h.masks[v] & ((1 << v) - 1) for v in range(n)]
    results: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    out = [0] * n
    reach = [0] * n

    def rec(v: int) -> None:
        if v == n:
            results.append((tuple(out), tuple(reach)))
            return
        nb = earlier[v]
        ins = nb
        while True:
            outs = nb & ~ins
            rv = 0
            for w in _bits(outs):
                rv |= (1 << w) | reach[w]
            if not rv & ins:
                saved = reach[:v]
                add = rv | (1 << v)
                for x in range(v):
                    if ins >> x & 1 or reach[x] & ins:
                        reach[x] |= add
                reach[v] = rv
                out[v] = outs
                for u in _bits(ins):
                    out[u] |= 1 << v
                rec(v + 1)
                for u in _bits(ins):
                    out[u] &= ~(1 << v)
                reach[:v] = saved
                reach[v] = 0
                out[v] = 0
            if ins == 0:
                break
            ins = (ins - 1) & nb

    rec(0)
    return results


def _dag_from_masks(h: Graph, out_masks) -> OrientedDag:
    arcs = [(u, v) for u in range(h.n) for v in _bits(out_masks[u])]
    return OrientedDag(h, arcs)


def acyclic_orientations(h: Graph) -> list[OrientedDag]:
    """Every labelled acyclic orientation of ``h`` exactly once."""
    return [_dag_from_masks(h, out) for out, _ in iter_orientation_masks(h)]


def count_acyclic_orientations_via_chromatic(h: Graph) -> int:
    """|chi_h(-1)| by deletion-contraction (Stanley's theorem)."""
    require_size(h.n, pattern_cap(), "count_acyclic_orientations_via_chromatic")
    return abs(_chromatic_at(h.n, frozenset(h.edges()), -1))


@lru_cache(maxsize=None)
def _chromatic_at(n: int, edges: frozenset, x: int) -> int:
    if not edges:
        return x ** n
    u, v = min(edges)
    deleted = edges - {(u, v)}
    # contract v into u, relabel the top vertex n-1 into v's slot
    merged = set()
    for a, b in deleted:
        a = u if a == v else a
        b = u if b == v else b
        if a == b:
            continue
        a = v if a == n - 1 else a
        b = v if b == n - 1 else b
        merged.add((min(a, b), max(a, b)))
    return _chromatic_at(n, deleted, x) - _chromatic_at(n - 1, frozenset(merged), x)


def sources(d: OrientedDag) -> frozenset[int]:
    return d.sources


def reach(d: OrientedDag, s: int) -> frozenset[int]:
    """Vertices reachable from ``s`` by a nonempty directed path."""
    return d.reach(s)


def reachers(d: OrientedDag, u: int) -> frozenset[int]:
    """Sources from which ``u`` is reachable (``u`` itself excluded)."""
    rm = d.reach_masks
    return frozenset(s for s in d.sources if rm[s] >> u & 1)


# --------------------------------------------------------------------------
# source systems: the (source, reach) structure that dtd and dtw depend on
# --------------------------------------------------------------------------

def source_system(reach_masks, n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """``(source_mask, ((s, R(s) restricted to non-sources), ...))``."""
    indeg_zero = 0
    covered = 0
    for m in reach_masks:
        covered |= m
    full = (1 << n) - 1
    indeg_zero = full & ~covered
    return indeg_zero, tuple((s, reach_masks[s] & ~indeg_zero) for s in _bits(indeg_zero))


def canonical_system_key(system: tuple[tuple[int, int], ...], n: int) -> tuple:
    """Isomorphism-invariant key of a source/reach incidence structure.

    The smaller side is permuted exhaustively; the other side is read as a
    sorted multiset of bitmasks, which makes the key complete.
    """
    from itertools import permutations

    src_mask = 0
    for s, _ in system:
        src_mask |= 1 << s
    nonsrc = [v for v in range(n) if not src_mask >> v & 1]
    col = {v: i for i, v in enumerate(nonsrc)}
    rows = []
    for _, r in system:
        rows.append(sum(1 << col[v] for v in _bits(r)))
    ns, nt = len(rows), len(nonsrc)
    if nt <= ns:
        best = None
        for perm in permutations(range(nt)):
            key = tuple(sorted(sum(1 << perm[j] for j in range(nt) if r >> j & 1) for r in rows))
            if best is None or key < best:
                best = key
        return (ns, nt, 0, best)
    cols = [sum(1 << i for i, r in enumerate(rows) if r >> j & 1) for j in range(nt)]
    best = None
    for perm in permutations(range(ns)):
        key = tuple(sorted(sum(1 << perm[i] for i in range(ns) if c >> i & 1) for c in cols))
        if best is None or key < best:
            best = key
    return (ns, nt, 1, best)
