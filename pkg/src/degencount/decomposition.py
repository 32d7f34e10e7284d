"""DAG tree decompositions, DAG treewidth on small DAGs, Bip(H) and the
associated family, classical treedepth/treewidth, and hypergraph export.

Reach sets here are *closed*: ``R[s] = {s} | R(s)``.  A source is reached only
by itself, so with closed reach the intersection property also forces every
source to occupy a connected set of bags.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence, TextIO

from .graph import Graph, OrientedDag, _bits, require_size
from .orientations import canonical_system_key, iter_orientation_masks, source_system

MAX_DTW_SOURCES = 7
MAX_FAMILY_NONSOURCES = 8
MAX_CLASSICAL = 10


# --------------------------------------------------------------------------
# DAG tree decompositions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DagTreeDecomposition:
    """Bags of sources on a tree; ``edges`` are pairs of bag indices."""

    bags: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...] = ()

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def tree_path(self, a: int, b: int) -> list[int]:
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        for x, y in self.edges:
            nbrs[x].append(y)
            nbrs[y].append(x)
        prev = {a: None}
        stack = [a]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        if b not in prev:
            return []
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def to_json(self):
        return {"bags": [sorted(b) for b in self.bags], "edges": [list(e) for e in self.edges],
                "width": self.width}


@dataclass
class DecompositionCheck:
    ok: bool
    reason: str = ""
    triple: tuple[int, int, int] | None = None  # (B, B1, B2) bag indices

    def __bool__(self) -> bool:
        return self.ok


def _closed_reach(d: OrientedDag) -> list[int]:
    return [d.reach_masks[v] | (1 << v) for v in range(d.n)]


def _is_tree(k: int, edges: Sequence[tuple[int, int]]) -> bool:
    if k == 0:
        return not edges
    if len(edges) != k - 1:
        return False
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if not (0 <= a < k and 0 <= b < k):
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def explain_decomposition(d: OrientedDag, t: DagTreeDecomposition) -> DecompositionCheck:
    """Coverage, tree shape, and the intersection property over all bag triples."""
    srcs = d.sources
    for b in t.bags:
        if not b or not b <= srcs:
            return DecompositionCheck(False, f"bag {sorted(b)} is empty or holds a non-source")
    covered = frozenset().union(*t.bags) if t.bags else frozenset()
    if covered != srcs:
        return DecompositionCheck(False, f"sources {sorted(srcs - covered)} are not covered")
    k = len(t.bags)
    if not _is_tree(k, t.edges):
        return DecompositionCheck(False, "bag graph is not a tree")
    closed = _closed_reach(d)
    rb = [0] * k
    for i, b in enumerate(t.bags):
        for s in b:
            rb[i] |= closed[s]
    for i1 in range(k):
        for i2 in range(i1 + 1, k):
            common = rb[i1] & rb[i2]
            if not common:
                continue
            for mid in t.tree_path(i1, i2)[1:-1]:
                if common & ~rb[mid]:
                    return DecompositionCheck(
                        False, f"bag {mid} misses the shared reach of bags {i1} and {i2}", (mid, i1, i2))
    return DecompositionCheck(True)


def validate_dtd_decomposition(d: OrientedDag, t: DagTreeDecomposition) -> bool:
    return explain_decomposition(d, t).ok


# --------------------------------------------------------------------------
# DAG treewidth search
# --------------------------------------------------------------------------

def gyo_acyclic(edges: Sequence[int]) -> bool:
    """GYO reduction on bitmask hyperedges: True iff the hypergraph is alpha-acyclic."""
    es = [e for e in edges if e]
    while True:
        ones = twos = 0
        for e in es:
            twos |= ones & e
            ones |= e
        lonely = ones & ~twos
        changed = False
        if lonely:
            es = [e & ~lonely for e in es]
            changed = True
        kept: list[int] = []
        for i, e in enumerate(es):
            if not e:
                changed = True
                continue
            absorbed = any(j != i and not e & ~f and (f != e or j < i) for j, f in enumerate(es))
            if absorbed:
                changed = True
            else:
                kept.append(e)
        es = kept
        if len(es) <= 1:
            return True
        if not changed:
            return False


def _join_tree(masks: Sequence[int]) -> list[tuple[int, int]]:
    """Maximum-weight spanning tree on |intersection| (a join tree when acyclic)."""
    k = len(masks)
    if k <= 1:
        return []
    in_tree = [False] * k
    best = [-1] * k
    link = [0] * k
    in_tree[0] = True
    for j in range(1, k):
        best[j] = (masks[0] & masks[j]).bit_count()
    edges = []
    for _ in range(k - 1):
        j = max((x for x in range(k) if not in_tree[x]), key=lambda x: (best[x], -x))
        in_tree[j] = True
        edges.append((link[j], j))
        for x in range(k):
            if not in_tree[x]:
                w = (masks[j] & masks[x]).bit_count()
                if w > best[x]:
                    best[x], link[x] = w, j
    return edges


def _family_masks(faces: Sequence[tuple[int, ...]], closed: Sequence[int]) -> list[int]:
    return [_union(closed, f) for f in faces]


def _union(closed: Sequence[int], face: Sequence[int]) -> int:
    m = 0
    for s in face:
        m |= closed[s]
    return m


def _reduce_faces(faces: list[tuple[int, ...]], closed: Sequence[int]) -> list[tuple[int, ...]]:
    """Drop bags whose closed reach lies inside another bag's."""
    masks = _family_masks(faces, closed)
    keep = []
    for i, m in enumerate(masks):
        if any(j != i and not m & ~masks[j] and (masks[j] != m or j < i) for j in range(len(faces))):
            continue
        keep.append(faces[i])
    return keep


def _search_width(srcs: Sequence[int], closed: Sequence[int], w: int) -> list[tuple[int, ...]] | None:
    """Faces (bags) of size <= w covering ``srcs`` whose reach hypergraph is
    alpha-acyclic, or None.  Singletons are always present; the search runs
    over sets of larger faces, smallest sets first."""
    singles = [(s,) for s in srcs]
    big = [f for r in range(2, w + 1) for f in combinations(srcs, r)]
    base = [closed[s] for s in srcs]
    if gyo_acyclic(base):
        return singles
    big_masks = [_union(closed, f) for f in big]
    for size in range(1, len(big) + 1):
        for pick in combinations(range(len(big)), size):
            if gyo_acyclic(base + [big_masks[i] for i in pick]):
                return singles + [big[i] for i in pick]
    return None


def _decomposition_from_faces(faces: list[tuple[int, ...]], closed: Sequence[int]) -> DagTreeDecomposition:
    faces = _reduce_faces(faces, closed)
    masks = _family_masks(faces, closed)
    return DagTreeDecomposition(tuple(frozenset(f) for f in faces), tuple(_join_tree(masks)))


def _dtw_of_sources(n: int, srcs: Sequence[int], closed: Sequence[int]) -> tuple[int, list[tuple[int, ...]]]:
    if not srcs:
        return 0, []
    for w in range(1, len(srcs) + 1):
        faces = _search_width(srcs, closed, w)
        if faces is not None:
            return w, faces
    raise AssertionError("the single bag of all sources is always valid")


def dtw_bruteforce(d: OrientedDag) -> tuple[int, DagTreeDecomposition]:
    """Minimum DAG width with a witness decomposition (at most 7 sources)."""
    srcs = sorted(d.sources)
    require_size(len(srcs), MAX_DTW_SOURCES, "dtw_bruteforce (sources)")
    closed = _closed_reach(d)
    w, faces = _dtw_of_sources(d.n, srcs, closed)
    t = _decomposition_from_faces(faces, closed)
    return w, t


def dtw_of_system(n: int, system: Sequence[tuple[int, int]]) -> int:
    closed = [1 << v for v in range(n)]
    srcs = []
    for s, r in system:
        srcs.append(s)
        closed[s] = r | (1 << s)
    # non-source rows are irrelevant: only sources appear in bags
    require_size(len(srcs), MAX_DTW_SOURCES, "dtw_bruteforce (sources)")
    return _dtw_of_sources(n, srcs, closed)[0]


_dtw_cache: dict[tuple, int] = {}


def dtw_of_system_cached(n: int, system: Sequence[tuple[int, int]]) -> int:
    key = canonical_system_key(tuple(system), n)
    val = _dtw_cache.get(key)
    if val is None:
        val = dtw_of_system(n, system)
        _dtw_cache[key] = val
    return val


def unique_systems_any(h: Graph) -> list[tuple[tuple[int, int], ...]]:
    """Distinct source systems over all orientations (compiled when small)."""
    from ._kernels import PACK_LIMIT, unique_systems

    if 0 < h.n <= PACK_LIMIT:
        return unique_systems(h)
    seen = set()
    for _, reach in iter_orientation_masks(h):
        seen.add(source_system(reach, h.n)[1])
    return sorted(seen)


def dtw_graph(h: Graph) -> int:
    """Maximum of dtw over all acyclic orientations of ``h``."""
    if h.n == 0:
        return 0
    return max(dtw_of_system_cached(h.n, sys_) for sys_ in unique_systems_any(h))


# --------------------------------------------------------------------------
# literal route: labelled trees over bag multisets (test oracle)
# --------------------------------------------------------------------------

def prufer_trees(k: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Every labelled tree on ``k`` nodes, decoded from its Pruefer sequence."""
    if k == 1:
        yield ()
        return
    if k == 2:
        yield ((0, 1),)
        return
    for seq in product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(k) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(k) if degree[i] == 1]
        edges.append((u, v))
        yield tuple(edges)


def dtw_prufer(d: OrientedDag, max_width: int | None = None) -> int:
    """dtw by enumerating antichains of at most |S| bags and every labelled
    tree on them.  Exponential; only for tiny DAGs."""
    srcs = sorted(d.sources)
    require_size(len(srcs), 5, "dtw_prufer (sources)")
    if not srcs:
        return 0
    top = max_width or len(srcs)
    for w in range(1, top + 1):
        cand = [frozenset(f) for r in range(1, w + 1) for f in combinations(srcs, r)]
        for k in range(1, len(srcs) + 1):
            for bags in combinations(cand, k):
                if frozenset().union(*bags) != frozenset(srcs):
                    continue
                if any(a < b for a in bags for b in bags):
                    continue
                for tree in prufer_trees(k):
                    if validate_dtd_decomposition(d, DagTreeDecomposition(bags, tree)):
                        return w
    return len(srcs)


# --------------------------------------------------------------------------
# Bip(H), associated family, hypergraph export
# --------------------------------------------------------------------------

def bip(d: OrientedDag) -> Graph:
    """Sources vs non-sources, with {s, v} whenever v is reachable from s."""
    edges = []
    for s in sorted(d.sources):
        for v in _bits(d.reach_masks[s]):
            if v not in d.sources:
                edges.append((min(s, v), max(s, v)))
    return Graph(d.n, edges)


def reachers_of(d: OrientedDag) -> dict[int, list[int]]:
    srcs = sorted(d.sources)
    return {v: [s for s in srcs if d.reach_masks[s] >> v & 1] for v in range(d.n) if v not in d.sources}


def associated_family(d: OrientedDag) -> Iterator[Graph]:
    """One G_S per choice function (each non-source contracted into one of the
    sources reaching it).  Sources are relabelled 0.. in ascending id order."""
    srcs = sorted(d.sources)
    idx = {s: i for i, s in enumerate(srcs)}
    reach_of = reachers_of(d)
    require_size(len(reach_of), MAX_FAMILY_NONSOURCES, "associated_family (non-sources)")
    for v, ps in reach_of.items():
        if not ps:
            raise RuntimeError(f"internal error: non-source {v} is reached by no source")
    items = list(reach_of.items())
    for choice in product(*(ps for _, ps in items)):
        edges = set()
        for (v, ps), c in zip(items, choice):
            for s in ps:
                if s != c:
                    a, b = idx[s], idx[c]
                    edges.add((min(a, b), max(a, b)))
        yield Graph(len(srcs), sorted(edges))


def associated_family_distinct(d: OrientedDag) -> list[Graph]:
    seen: dict[tuple, Graph] = {}
    for g in associated_family(d):
        seen.setdefault(tuple(g.edges()), g)
    return list(seen.values())


@dataclass(frozen=True)
class Hypergraph:
    vertices: frozenset
    hyperedges: tuple[frozenset, ...]

    def __post_init__(self):
        for e in self.hyperedges:
            if not e <= self.vertices:
                raise ValueError("hyperedge outside the vertex set")

    def format(self, header: Sequence[str] = ()) -> str:
        lines = [f"# {h}" for h in header]
        lines.append(f"# vertices: {' '.join(map(str, sorted(self.vertices)))}")
        lines += [" ".join(map(str, sorted(e))) for e in self.hyperedges]
        return "\n".join(lines) + "\n"

    def write(self, out: TextIO, header: Sequence[str] = ()) -> None:
        out.write(self.format(header))


def to_hypergraph(d: OrientedDag) -> Hypergraph:
    """Non-sources as vertices, one hyperedge per source: what it reaches.
    Isolated sources reach nothing and contribute no hyperedge."""
    nonsrc = frozenset(v for v in range(d.n) if v not in d.sources)
    edges = tuple(frozenset(v for v in _bits(d.reach_masks[s]) if v in nonsrc) for s in sorted(d.sources))
    return Hypergraph(nonsrc, tuple(e for e in edges if e))


def parse_hypergraph(text: str) -> Hypergraph:
    edges = []
    verts: set[int] = set()
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("# vertices:"):
            verts |= {int(x) for x in s.split(":", 1)[1].split()}
            continue
        if not s or s.startswith("#"):
            continue
        e = frozenset(int(x) for x in s.split())
        verts |= e
        edges.append(e)
    return Hypergraph(frozenset(verts), tuple(edges))


# --------------------------------------------------------------------------
# classical treedepth and treewidth
# --------------------------------------------------------------------------

def _components_in(masks: Sequence[int], sub: int) -> list[int]:
    comps = []
    left = sub
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = masks[v] & sub & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        left &= ~comp
    return comps


def treedepth_bruteforce(g: Graph) -> int:
    """Exact treedepth: best root per component, memoised on vertex subsets."""
    require_size(g.n, MAX_CLASSICAL, "treedepth_bruteforce")
    masks = g.masks

    @lru_cache(maxsize=None)
    def td(sub: int) -> int:
        if not sub:
            return 0
        comps = _components_in(masks, sub)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        return 1 + min(td(sub & ~(1 << v)) for v in _bits(sub))

    return td((1 << g.n) - 1)


def treewidth_bruteforce(g: Graph) -> int:
    """Exact treewidth via the elimination-order DP over vertex subsets."""
    require_size(g.n, MAX_CLASSICAL, "treewidth_bruteforce")
    n = g.n
    if n == 0:
        return -1
    masks = g.masks
    full = (1 << n) - 1

    def q(sub: int, v: int) -> int:
        # vertices outside sub | {v} reachable from v through sub
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            x = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nb = masks[x] & ~seen
            seen |= nb
            out |= nb & ~sub
            frontier |= nb & sub
        return out.bit_count()

    tw = {0: -1}
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            sub = 0
            for v in combo:
                sub |= 1 << v
            best = n
            for v in combo:
                rest = sub & ~(1 << v)
                cand = max(tw[rest], q(rest, v))
                if cand < best:
                    best = cand
            tw[sub] = best
    return tw[full]
