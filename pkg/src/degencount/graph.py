"""Graph representations, edge-list I/O, degeneracy orderings and small-graph
isomorphism machinery.

Vertices are always the dense integers ``0..n-1``.  Pattern-scale algorithms
work on adjacency bitmasks (``Graph.masks``); host-scale code uses the
frozenset adjacency.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, TextIO

DEFAULT_PATTERN_CAP = 12


class GraphTooLarge(ValueError):
    """Raised when an input exceeds the design bound of a brute-force routine."""


class EdgeListError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def pattern_cap() -> int:
    """Vertex cap for pattern-scale routines, overridable by ``DEGENCOUNT_MAX_PATTERN``."""
    raw = os.environ.get("DEGENCOUNT_MAX_PATTERN")
    if raw is None:
        return DEFAULT_PATTERN_CAP
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_PATTERN_CAP


def require_size(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise GraphTooLarge(f"{what}: {n} vertices exceeds the bound of {bound} (too large)")


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
        return cls(n, edges)

    @classmethod
    def from_edge_set(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Like the constructor, but silently drops repeated edges."""
        seen = {(min(u, v), max(u, v)) for u, v in edges}
        return cls(n, sorted(seen))

    # basic queries
    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adj[v]))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in a) for a in self.adj)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((len(a) for a in self.adj), reverse=True))

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u] if v in index and u < v]
        return Graph(len(order), edges)

    def complement(self) -> "Graph":
        return Graph(self.n, [(u, v) for u, v in combinations(range(self.n), 2) if v not in self.adj[u]])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = [start]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    comp.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


# --------------------------------------------------------------------------
# degeneracy
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DegeneracyOrder:
    order: tuple[int, ...]
    d: int

    def rank(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """Peel minimum-degree vertices (ties to the smallest id)."""
    deg = [len(a) for a in g.adj]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    d = 0
    while heap:
        k, v = heapq.heappop(heap)
        if removed[v] or k != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, k)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return DegeneracyOrder(tuple(order), d)


def later_neighbor_counts(g: Graph, order: DegeneracyOrder) -> list[int]:
    pos = order.rank()
    return [sum(1 for w in g.adj[v] if pos[w] > pos[v]) for v in range(g.n)]


# --------------------------------------------------------------------------
# oriented graphs
# --------------------------------------------------------------------------

class OrientedDag:
    """An acyclic orientation of ``base``.

    ``out[v]``/``inc[v]`` hold out- and in-neighbours.  Reachability is
    computed on first use and cached as bitmasks, so it is only touched for
    pattern-sized DAGs.
    """

    def __init__(self, base: Graph, arcs: Iterable[tuple[int, int]]):
        n = base.n
        out: list[set[int]] = [set() for _ in range(n)]
        inc: list[set[int]] = [set() for _ in range(n)]
        count = 0
        for u, v in arcs:
            if v not in base.adj[u]:
                raise ValueError(f"arc ({u}, {v}) is not an edge of the base graph")
            if u in out[v] or v in out[u]:
                raise ValueError(f"edge {{{u}, {v}}} oriented twice")
            out[u].add(v)
            inc[v].add(u)
            count += 1
        if count != base.m:
            raise ValueError("every edge must receive exactly one direction")
        self.base = base
        self.n = n
        self.out: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in out)
        self.inc: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in inc)
        self.topo = _topological_order(self.out, self.inc)
        if self.topo is None:
            raise ValueError("orientation contains a directed cycle")
        self.sources: frozenset[int] = frozenset(v for v in range(n) if not inc[v])

    @classmethod
    def from_arcs(cls, n: int, arcs: Sequence[tuple[int, int]]) -> "OrientedDag":
        return cls(Graph(n, arcs), arcs)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.out[u])]

    def max_out_degree(self) -> int:
        return max((len(o) for o in self.out), default=0)

    @cached_property
    def reach_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for v in reversed(self.topo):
            m = 0
            for w in self.out[v]:
                m |= (1 << w) | masks[w]
            masks[v] = m
        return tuple(masks)

    @cached_property
    def source_mask(self) -> int:
        return sum(1 << s for s in self.sources)

    def reach(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self.reach_masks[v]))

    def key(self) -> tuple:
        return (self.n, tuple(self.arcs()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OrientedDag) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"OrientedDag(n={self.n}, arcs={self.arcs()})"


def _topological_order(out, inc) -> tuple[int, ...] | None:
    n = len(out)
    indeg = [len(s) for s in inc]
    ready = [v for v in range(n) if indeg[v] == 0]
    ready.reverse()
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in sorted(out[v], reverse=True):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return tuple(order) if len(order) == n else None


def is_acyclic(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    """Independent DFS three-colour cycle check."""
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
    state = [0] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(out[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(out[w])))
                    break
            else:
                state[v] = 2
                stack.pop()
    return True


def orient_by_order(g: Graph, order: DegeneracyOrder) -> OrientedDag:
    if sorted(order.order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertex set")
    pos = order.rank()
    return OrientedDag(g, [(u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges()])


def degeneracy_orientation(g: Graph) -> tuple[OrientedDag, int]:
    order = degeneracy_order(g)
    return orient_by_order(g, order), order.d


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --------------------------------------------------------------------------
# isomorphism, automorphisms, canonical labels
# --------------------------------------------------------------------------

def _refine(masks: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; split cells are ordered by neighbour-count signature."""
    while True:
        cell_masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple((masks[v] & cm).bit_count() for cm in cell_masks) for v in c}
            groups: dict[tuple, list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
                for k in sorted(groups):
                    new_cells.append(groups[k])
            else:
                new_cells.append(c)
        cells = new_cells
        if not changed:
            return cells


def _twin_classes(masks: Sequence[int], cell: Sequence[int]) -> list[list[int]]:
    classes: list[list[int]] = []
    for v in cell:
        for cls in classes:
            u = cls[0]
            if masks[u] & ~(1 << v) == masks[v] & ~(1 << u):
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


def _certificate(masks: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for i in range(n):
        mi = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (mi >> order[j] & 1)
    return code


def _initial_cells(masks: Sequence[int], colors: Sequence | None = None) -> list[list[int]]:
    n = len(masks)
    key = [(colors[v] if colors is not None else 0, masks[v].bit_count()) for v in range(n)]
    groups: dict = {}
    for v in range(n):
        groups.setdefault(key[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex order whose adjacency matrix is lexicographically minimal among
    the leaves of the individualisation-refinement tree (twin-pruned)."""
    masks = g.masks
    best: list = [None, ()]

    def search(cells: list[list[int]]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _certificate(masks, order)
            if best[0] is None or code < best[0]:
                best[0] = code
                best[1] = tuple(order)
            return
        cell = cells[target]
        for cls in _twin_classes(masks, cell):
            v = cls[0]
            rest = [w for w in cell if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(masks, split))

    if g.n:
        search(_refine(masks, _initial_cells(masks)))
    return best[1]


def canonical_label(g: Graph) -> bytes:
    """Byte string that is equal for two graphs iff they are isomorphic."""
    require_size(g.n, pattern_cap(), "canonical_label")
    if g.n == 0:
        return b""
    code = _certificate(g.masks, canonical_order(g))
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + code.to_bytes((nbits + 7) // 8 or 1, "big")


def canonical_form(g: Graph) -> Graph:
    """Relabelled copy of ``g`` in canonical vertex order."""
    order = canonical_order(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def from_canonical_label(label: bytes) -> Graph:
    if not label:
        return Graph(0)
    n = label[0]
    nbits = n * (n - 1) // 2
    code = int.from_bytes(label[1:], "big")
    edges = []
    bit = nbits - 1
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                edges.append((i, j))
            bit -= 1
    return Graph(n, edges)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test with degree pruning."""
    cap = pattern_cap()
    require_size(g1.n, cap, "is_isomorphic")
    require_size(g2.n, cap, "is_isomorphic")
    if g1.n != g2.n or g1.m != g2.m or g1.degree_sequence() != g2.degree_sequence():
        return False
    return _count_maps(g1.masks, g2.masks, stop_at_first=True) > 0


def _count_maps(m1: Sequence[int], m2: Sequence[int], colors1=None, colors2=None,
                stop_at_first: bool = False) -> int:
    """Number of bijections V1 -> V2 preserving adjacency, non-adjacency and colours."""
    n = len(m1)
    deg1 = [m.bit_count() for m in m1]
    deg2 = [m.bit_count() for m in m2]
    # place high-degree, well-connected vertices first
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda x: ((m1[x] & placed).bit_count(), deg1[x], -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    image = [-1] * n
    used = [False] * n
    found = 0

    def rec(i: int) -> bool:
        nonlocal found
        if i == n:
            found += 1
            return stop_at_first
        v = order[i]
        for w in range(n):
            if used[w] or deg2[w] != deg1[v]:
                continue
            if colors1 is not None and colors1[v] != colors2[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (m1[v] >> u & 1) != (m2[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            used[w] = False
            image[v] = -1
        return False

    rec(0)
    return found


def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of vertices with ``N(u) - v == N(v) - u`` (true or false twins)."""
    return _twin_classes(g.masks, range(g.n))


def automorphism_count(g: Graph) -> int:
    """|Aut(g)|: product of twin-class factorials times the coloured
    automorphisms of the twin quotient (twin swaps form a normal subgroup)."""
    require_size(g.n, pattern_cap(), "automorphism_count")
    if g.n == 0:
        return 1
    classes = twin_classes(g)
    factor = 1
    for cls in classes:
        for i in range(2, len(cls) + 1):
            factor *= i
    reps = [cls[0] for cls in classes]
    qmasks = []
    for r in reps:
        qmasks.append(sum(1 << j for j, s in enumerate(reps) if g.masks[r] >> s & 1))
    colors = []
    for cls in classes:
        closed = len(cls) > 1 and bool(g.masks[cls[0]] >> cls[1] & 1)
        colors.append((len(cls), closed))
    return factor * _count_maps(qmasks, qmasks, colors, colors)


# --------------------------------------------------------------------------
# edge-list I/O
# --------------------------------------------------------------------------

def parse_edge_list(text: str) -> tuple[Graph, list[str]]:
    """Parse the edge-list format; returns the graph and the original label of
    each dense vertex id."""
    declared: int | None = None
    pairs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2 or declared is not None or pairs:
                raise EdgeListError("the 'n <count>' header must appear once, before any edge", lineno)
            try:
                declared = int(tokens[1])
            except ValueError:
                raise EdgeListError(f"bad vertex count {tokens[1]!r}", lineno) from None
            if declared < 0:
                raise EdgeListError("vertex count must be nonnegative", lineno)
            continue
        if len(tokens) != 2:
            raise EdgeListError(f"expected 'u v', got {line!r}", lineno)
        if tokens[0] == tokens[1]:
            raise EdgeListError(f"self-loop {line!r} (declare vertex counts with 'n <count>')", lineno)
        pairs.append((tokens[0], tokens[1], lineno))

    tokens_seen: list[str] = []
    for a, b, _ in pairs:
        tokens_seen += [a, b]
    all_int = all(t.lstrip("-").isdigit() for t in tokens_seen)
    if declared is not None and all_int:
        labels = [str(i) for i in range(declared)]
        index = {}
        for a, b, lineno in pairs:
            for t in (a, b):
                v = int(t)
                if not 0 <= v < declared:
                    raise EdgeListError(f"vertex {t} outside 0..{declared - 1}", lineno)
                index[t] = v
    else:
        distinct = list(dict.fromkeys(tokens_seen))
        if all_int:
            distinct.sort(key=int)
        index = {t: i for i, t in enumerate(distinct)}
        labels = list(distinct)
        if declared is not None:
            if declared < len(distinct):
                raise EdgeListError(f"header declares {declared} vertices but {len(distinct)} labels appear")
            labels += [f"_iso{i}" for i in range(len(distinct), declared)]

    n = len(labels)
    seen: dict[tuple[int, int], int] = {}
    edges = []
    for a, b, lineno in pairs:
        u, v = index[a], index[b]
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(f"duplicate edge {a} {b} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append(key)
    return Graph(n, edges), labels


def read_edge_list(path: str | os.PathLike) -> tuple[Graph, list[str]]:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"n {g.n}")
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, out: TextIO, header: Sequence[str] = ()) -> None:
    out.write(format_edge_list(g, header))
