"""Named graph families and exhaustive small-graph enumeration."""
from __future__ import annotations

import random
import re
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import Graph, canonical_form, canonical_label, is_connected


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    """Centre 0 joined to ``leaves`` leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def subdivide(g: Graph) -> Graph:
    """Subdivide every edge once; subdivision vertices get ids ``n..n+m-1``."""
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        w = g.n + i
        edges += [(u, w), (w, v)]
    return Graph(g.n + g.m, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph(offset, edges)


@lru_cache(maxsize=None)
def _graphs_on(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism, in canonical form.

    Every graph on n vertices is a one-vertex extension of a graph on n-1
    vertices, so extending each class by every neighbourhood and deduplicating
    by canonical label is exhaustive.
    """
    if n == 0:
        return (Graph(0),)
    seen: dict[bytes, Graph] = {}
    for base in _graphs_on(n - 1):
        base_edges = base.edges()
        for mask in range(1 << (n - 1)):
            edges = base_edges + [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
            g = Graph(n, edges)
            lab = canonical_label(g)
            if lab not in seen:
                seen[lab] = canonical_form(g)
    return tuple(sorted(seen.values(), key=lambda g: (g.m, canonical_label(g))))


def all_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """Non-isomorphic graphs on exactly ``n`` vertices (n <= 8 is practical)."""
    for g in _graphs_on(n):
        if not connected or is_connected(g):
            yield g


def connected_graphs_upto(kmax: int, kmin: int = 1) -> list[Graph]:
    out = []
    for k in range(kmin, kmax + 1):
        out.extend(all_graphs(k, connected=True))
    return out


def random_degenerate(n: int, d: int, seed: int) -> Graph:
    """Vertex i (1-based) joins min(d, i-1) distinct uniformly drawn earlier
    vertices; repeated draws are redrawn.  d-degenerate by construction."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    rng = random.Random(seed)
    edges = []
    for i in range(n):
        chosen: set[int] = set()
        while len(chosen) < min(d, i):
            chosen.add(rng.randrange(i))
        edges += [(j, i) for j in sorted(chosen)]
    return Graph(n, edges)


_NAMED = re.compile(r"^(?:(K)(\d+),(\d+)|([KCPSE])(\d+))$")


def named_graph(name: str) -> Graph | None:
    """``K5``, ``C6``, ``P7`` (vertices), ``S3`` (star with 3 leaves),
    ``E4`` (edgeless), ``K3,4``; ``None`` if the name is not recognised."""
    m = _NAMED.match(name.strip())
    if not m:
        return None
    if m.group(1):
        return complete_bipartite(int(m.group(2)), int(m.group(3)))
    kind, k = m.group(4), int(m.group(5))
    builders = {"K": complete, "C": cycle, "P": path, "S": star, "E": empty_graph}
    return builders[kind](k)
