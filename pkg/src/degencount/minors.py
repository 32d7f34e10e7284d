"""Induced minors and the obstruction set for DAG treedepth at most two."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterator

from .families import cycle, path
from .graph import (Graph, canonical_form, canonical_label, format_edge_list,
                    parse_edge_list, require_size, _bits)

MAX_MINOR_HOST = 10
CATALOG_FILE = "obstructions.txt"


def _connected_subsets(masks, allowed: int) -> Iterator[int]:
    """Each connected vertex subset inside ``allowed`` exactly once (ESU order)."""

    def extend(sub: int, ext: int, nbhd: int, low: int) -> Iterator[int]:
        yield sub
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ~(1 << w)
            excl = masks[w] & allowed & ~(sub | nbhd) & ~((1 << (low + 1)) - 1)
            yield from extend(sub | (1 << w), ext | excl, nbhd | masks[w], low)

    for v in _bits(allowed):
        higher = allowed & ~((1 << (v + 1)) - 1)
        yield from extend(1 << v, masks[v] & higher, masks[v] | (1 << v), v)


def _closed_nbhd(masks, sub: int) -> int:
    out = sub
    for v in _bits(sub):
        out |= masks[v]
    return out


def induced_minor_model(host: Graph, pattern: Graph) -> list[int] | None:
    """Branch sets (bitmasks, indexed by pattern vertex) witnessing ``pattern``
    as an induced minor of ``host``, or ``None``."""
    require_size(host.n, MAX_MINOR_HOST, "induced_minor_contains")
    k = pattern.n
    if k == 0:
        return []
    if k > host.n or pattern.m > host.m:
        return None
    hm = host.masks
    pm = pattern.masks
    # BFS order per component so that later vertices have an earlier neighbour
    order: list[int] = []
    seen = 0
    for start in sorted(range(k), key=lambda v: -pattern.degree(v)):
        if seen >> start & 1:
            continue
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(_bits(pm[v] & ~seen), key=lambda x: -pattern.degree(x)):
                seen |= 1 << w
                queue.append(w)
    branch = [0] * k
    closed = [0] * k
    full = (1 << host.n) - 1

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        free = full & ~used
        if free.bit_count() < k - i:
            return False
        p = order[i]
        allowed = free
        need = []
        for j in range(i):
            q = order[j]
            if pm[p] >> q & 1:
                need.append(closed[q])
            else:
                allowed &= ~closed[q]
        if not allowed:
            return False
        for sub in _connected_subsets(hm, allowed):
            if (k - i - 1) > (free & ~sub).bit_count():
                continue
            if any(not sub & nb for nb in need):
                continue
            branch[p] = sub
            closed[p] = _closed_nbhd(hm, sub)
            if rec(i + 1, used | sub):
                return True
        branch[p] = 0
        closed[p] = 0
        return False

    if rec(0, 0):
        return [branch[v] for v in range(k)]
    return None


def induced_minor_contains(host: Graph, pattern: Graph) -> bool:
    """True iff ``pattern`` arises from ``host`` by vertex deletions and edge
    contractions (disjoint connected branch sets, exact adjacency)."""
    return induced_minor_model(host, pattern) is not None


def check_model(host: Graph, pattern: Graph, model: list[int]) -> bool:
    """Independent verification of a branch-set model."""
    union = 0
    for b in model:
        if not b or b & union:
            return False
        union |= b
        verts = list(_bits(b))
        if not _is_connected_within(host, verts):
            return False
    for p, q in combinations(range(pattern.n), 2):
        touching = any(host.has_edge(x, y) for x in _bits(model[p]) for y in _bits(model[q]))
        if touching != pattern.has_edge(p, q):
            return False
    return True


def _is_connected_within(g: Graph, verts: list[int]) -> bool:
    if not verts:
        return False
    vs = set(verts)
    stack = [verts[0]]
    seen = {verts[0]}
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def one_step_reductions(g: Graph) -> Iterator[Graph]:
    """Every graph obtained by deleting one vertex or contracting one edge."""
    for v in range(g.n):
        yield g.induced_subgraph(set(range(g.n)) - {v})
    for u, v in g.edges():
        keep = [x for x in range(g.n) if x != v]
        idx = {x: i for i, x in enumerate(keep)}
        edges = set()
        for a, b in g.edges():
            a2 = u if a == v else a
            b2 = u if b == v else b
            if a2 != b2:
                edges.add((min(idx[a2], idx[b2]), max(idx[a2], idx[b2])))
        yield Graph(g.n - 1, sorted(edges))


# --------------------------------------------------------------------------
# obstructions for dtd <= 2
# --------------------------------------------------------------------------

class ObstructionCountMismatch(RuntimeError):
    pass


def _p7_supergraph_classes() -> list[Graph]:
    """All 7-vertex supergraphs of P7 up to isomorphism."""
    p7 = path(7)
    non_edges = [(u, v) for u, v in combinations(range(7), 2) if not p7.has_edge(u, v)]
    classes: dict[bytes, Graph] = {}
    base = p7.edges()
    for mask in range(1 << len(non_edges)):
        extra = [non_edges[i] for i in range(len(non_edges)) if mask >> i & 1]
        g = Graph(7, base + extra)
        lab = canonical_label(g)
        if lab not in classes:
            classes[lab] = canonical_form(g)
    return [classes[k] for k in sorted(classes)]


def _embeds_spanning(small: Graph, big: Graph) -> bool:
    """True iff some bijection maps every edge of ``small`` onto an edge of ``big``."""
    if small.n != big.n or small.m > big.m:
        return False
    n = small.n
    sm, bm = small.masks, big.masks
    order = sorted(range(n), key=lambda v: -small.degree(v))
    image = [-1] * n

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for x in range(n):
            if used >> x & 1 or big.degree(x) < small.degree(v):
                continue
            if all(bm[x] >> image[u] & 1 for u in order[:i] if sm[v] >> u & 1):
                image[v] = x
                if rec(i + 1, used | (1 << x)):
                    return True
        image[v] = -1
        return False

    return rec(0, 0)


@lru_cache(maxsize=1)
def derive_h1_h2() -> tuple[Graph, Graph]:
    """Reconstruct the two 7-vertex obstructions besides C6 and P7.

    Starts from the supergraphs of P7 with dtd 3 and drops P7 itself, every
    graph with C6 as an induced minor, and every graph that has another
    surviving candidate as a proper spanning subgraph.
    """
    from .elimination import dtd_graph

    p7, c6 = path(7), cycle(6)
    p7_label = canonical_label(p7)
    kept = [g for g in _p7_supergraph_classes()
            if canonical_label(g) != p7_label and dtd_graph(g) == 3
            and not induced_minor_contains(g, c6)]
    minimal = [g for g in kept
               if not any(o.m < g.m and _embeds_spanning(o, g) for o in kept)]
    if len(minimal) != 2:
        raise ObstructionCountMismatch(
            f"obstruction count mismatch: expected 2 minimal supergraphs of P7, found {len(minimal)}")
    minimal.sort(key=lambda g: canonical_label(g))
    return minimal[0], minimal[1]


def minimal_dtd3_graphs(max_n: int) -> list[Graph]:
    """Connected graphs on at most ``max_n`` vertices with dtd_graph 3 whose
    every one-step deletion or contraction has dtd_graph at most 2."""
    from .elimination import dtd_graph
    from .families import all_graphs

    cache: dict[bytes, int] = {}

    def dtd_of(g: Graph) -> int:
        lab = canonical_label(g)
        if lab not in cache:
            cache[lab] = dtd_graph(g)
        return cache[lab]

    out = []
    for n in range(1, max_n + 1):
        for g in all_graphs(n, connected=True):
            if dtd_of(g) == 3 and all(dtd_of(r) <= 2 for r in one_step_reductions(g)):
                out.append(g)
    return out


def catalog_text(h1: Graph, h2: Graph) -> str:
    """Catalog file: '#' provenance header, then one ``[NAME]`` edge list per graph."""
    lines = [
        "# dtd <= 2 induced-minor obstruction catalog",
        "# generated by degencount.minors.derive_h1_h2 (regenerate: degencount obstructions --write)",
        "# H1, H2: 7-vertex supergraphs of P7 with dtd_graph 3, no C6 induced minor,",
        "# and no other such candidate as a proper spanning subgraph",
        "",
    ]
    for name, g in (("C6", cycle(6)), ("P7", path(7)), ("H1", h1), ("H2", h2)):
        lines.append(f"[{name}]")
        lines.append(format_edge_list(g))
    return "\n".join(lines)


def parse_catalog(text: str) -> dict[str, Graph]:
    out: dict[str, Graph] = {}
    name = None
    chunk: list[str] = []
    for line in text.splitlines() + ["[END]"]:
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            if name is not None:
                out[name] = parse_edge_list("\n".join(chunk))[0]
            name = s[1:-1]
            chunk = []
        else:
            chunk.append(line)
    return out


@lru_cache(maxsize=1)
def obstruction_catalog() -> dict[str, Graph]:
    """C6, P7, H1, H2 from the packaged catalog file."""
    text = resources.files("degencount.data").joinpath(CATALOG_FILE).read_text(encoding="utf-8")
    return parse_catalog(text)


def obstructions() -> list[tuple[str, Graph]]:
    cat = obstruction_catalog()
    return [(name, cat[name]) for name in ("C6", "P7", "H1", "H2")]


def contained_obstructions(h: Graph) -> list[str]:
    require_size(h.n, MAX_MINOR_HOST, "dtd_le2_by_obstructions")
    return [name for name, ob in obstructions() if induced_minor_contains(h, ob)]


def dtd_le2_by_obstructions(h: Graph) -> bool:
    """True iff ``h`` has none of C6, P7, H1, H2 as an induced minor."""
    require_size(h.n, MAX_MINOR_HOST, "dtd_le2_by_obstructions")
    return not any(induced_minor_contains(h, ob) for _, ob in obstructions())


class MinorClosure:
    """Induced-minor containment of a fixed pattern set, memoised over
    isomorphism classes of hosts.

    A host contains a pattern iff it is isomorphic to it or one of its
    one-step deletions/contractions contains it.  Sweeping every graph on
    up to eight vertices this way shares work between hosts.
    """

    def __init__(self, patterns: dict[str, Graph]):
        self.labels = {canonical_label(g): name for name, g in patterns.items()}
        self.min_n = min((g.n for g in patterns.values()), default=0)
        self.memo: dict[bytes, frozenset] = {}

    def contained(self, g: Graph) -> frozenset:
        if g.n < self.min_n:
            return frozenset()
        lab = canonical_label(g)
        hit = self.memo.get(lab)
        if hit is not None:
            return hit
        found = set()
        if lab in self.labels:
            found.add(self.labels[lab])
        for r in one_step_reductions(g):
            found |= self.contained(r)
        hit = frozenset(found)
        self.memo[lab] = hit
        return hit
