"""DAG elimination forests and DAG treedepth.

Everything here operates on the *source system* of a DAG: its source set and,
per source, the bitmask of vertices it reaches.  Deleting a source together
with its reach never creates new sources (a surviving vertex cannot have an
in-neighbour that was reachable from the deleted source), and two surviving
vertices are connected in the residual DAG iff they are connected through
shared reach of surviving sources.  So components and the recursion only need
the source system.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .graph import Graph, OrientedDag, _bits
from .orientations import canonical_system_key, iter_orientation_masks, source_system


@dataclass(frozen=True)
class ForestNode:
    vertex: int
    children: tuple["ForestNode", ...] = ()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def walk(self) -> Iterator["ForestNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class EliminationForest:
    roots: tuple[ForestNode, ...] = ()

    @property
    def depth(self) -> int:
        return max((r.depth() for r in self.roots), default=0)

    def nodes(self) -> Iterator[ForestNode]:
        for r in self.roots:
            yield from r.walk()

    def vertices(self) -> list[int]:
        return [node.vertex for node in self.nodes()]

    def parent_map(self) -> dict[int, int | None]:
        parents: dict[int, int | None] = {}
        stack = [(r, None) for r in self.roots]
        while stack:
            node, p = stack.pop()
            parents[node.vertex] = p
            stack.extend((c, node.vertex) for c in node.children)
        return parents

    def ancestors(self, v: int) -> list[int]:
        parents = self.parent_map()
        out = []
        p = parents[v]
        while p is not None:
            out.append(p)
            p = parents[p]
        return out

    def root_to_leaf_paths(self) -> list[list[int]]:
        paths = []

        def rec(node: ForestNode, prefix: list[int]) -> None:
            here = prefix + [node.vertex]
            if not node.children:
                paths.append(here)
            for c in node.children:
                rec(c, here)

        for r in self.roots:
            rec(r, [])
        return paths

    def render(self) -> str:
        lines: list[str] = []

        def rec(node: ForestNode, indent: int) -> None:
            lines.append("  " * indent + str(node.vertex))
            for c in node.children:
                rec(c, indent + 1)

        for r in self.roots:
            rec(r, 0)
        return "\n".join(lines)

    def to_json(self):
        def enc(node: ForestNode):
            return {"vertex": node.vertex, "children": [enc(c) for c in node.children]}

        return [enc(r) for r in self.roots]


# --------------------------------------------------------------------------
# source-system primitives
# --------------------------------------------------------------------------

class _System:
    """Bitmask view of a DAG: ``src`` mask and closed reach ``{s} | R(s)``."""

    __slots__ = ("src", "closed", "reach")

    def __init__(self, n: int, system: Sequence[tuple[int, int]]):
        self.src = 0
        self.closed = [0] * n
        self.reach = [0] * n
        for s, r in system:
            self.src |= 1 << s
            self.reach[s] = r
            self.closed[s] = r | (1 << s)

    def components(self, rem: int) -> list[int]:
        """Masks of the connected components of the residual DAG on ``rem``."""
        comps = []
        left = rem & self.src
        while left:
            low = left & -left
            seed = low.bit_length() - 1
            comp = self.closed[seed] & rem
            srcs = low
            grew = True
            while grew:
                grew = False
                for s in _bits(left & ~srcs):
                    if self.closed[s] & comp:
                        comp |= self.closed[s] & rem
                        srcs |= 1 << s
                        grew = True
            left &= ~srcs
            comps.append(comp)
        return comps


def _system_of(d: OrientedDag) -> _System:
    _, system = source_system(d.reach_masks, d.n)
    return _System(d.n, system)


def _full(n: int) -> int:
    return (1 << n) - 1


def _check(sys_: _System, rem: int, k: int) -> list[ForestNode] | None:
    """Alg. 'CheckDTD' with a witness: a forest of depth <= k for ``rem`` or None."""
    if not rem & sys_.src:
        return []
    if k < 1:
        return None
    roots: list[ForestNode] = []
    for comp in sys_.components(rem):
        tree = None
        for s in _bits(comp & sys_.src):
            sub = _check(sys_, comp & ~sys_.closed[s], k - 1)
            if sub is not None:
                tree = ForestNode(s, tuple(sub))
                break
        if tree is None:
            return None
        roots.append(tree)
    return roots


def check_dtd(d: OrientedDag, k: int) -> EliminationForest | None:
    """A valid elimination forest of depth <= k, or ``None`` if none exists.

    Sources are tried in ascending id order and the first witness is returned.
    """
    roots = _check(_system_of(d), _full(d.n), k)
    return None if roots is None else EliminationForest(tuple(roots))


def _min_depth_table(sys_: _System):
    @lru_cache(maxsize=None)
    def best(rem: int) -> int:
        if not rem & sys_.src:
            return 0
        worst = 0
        for comp in sys_.components(rem):
            worst = max(worst, best_connected(comp))
        return worst

    @lru_cache(maxsize=None)
    def best_connected(comp: int) -> int:
        return 1 + min(best(comp & ~sys_.closed[s]) for s in _bits(comp & sys_.src))

    return best, best_connected


def _min_forest(sys_: _System, rem: int) -> tuple[int, list[ForestNode]]:
    best, best_connected = _min_depth_table(sys_)

    def build(r: int) -> list[ForestNode]:
        out = []
        for comp in sys_.components(r):
            target = best_connected(comp)
            for s in _bits(comp & sys_.src):
                rest = comp & ~sys_.closed[s]
                if 1 + best(rest) == target:
                    out.append(ForestNode(s, tuple(build(rest))))
                    break
        return out

    return best(rem), build(rem)


def dtd_dag(d: OrientedDag) -> tuple[int, EliminationForest]:
    """DAG treedepth with a minimum-depth witness forest."""
    depth, roots = _min_forest(_system_of(d), _full(d.n))
    return depth, EliminationForest(tuple(roots))


def dtd_of_system(n: int, system: Sequence[tuple[int, int]]) -> int:
    best, _ = _min_depth_table(_System(n, system))
    return best(_full(n))


_dtd_cache: dict[tuple, int] = {}


def dtd_of_system_cached(n: int, system: Sequence[tuple[int, int]]) -> int:
    """``dtd_of_system`` memoised on the isomorphism class of the system."""
    key = canonical_system_key(system, n)
    val = _dtd_cache.get(key)
    if val is None:
        val = dtd_of_system(n, system)
        _dtd_cache[key] = val
    return val


def dtd_graph(h: Graph) -> int:
    """Maximum DAG treedepth over all acyclic orientations of ``h``."""
    from ._kernels import PACK_LIMIT, packed_dtds, unique_system_keys

    if h.n == 0:
        return 0
    if h.n <= PACK_LIMIT:
        return max(packed_dtds(unique_system_keys(h), h.n))
    return dtd_graph_reference(h)


def dtd_graph_reference(h: Graph) -> int:
    """Pure-Python orientation scan; the reference for ``dtd_graph``."""
    worst = 0
    seen: dict[tuple, int] = {}
    for _, reach in iter_orientation_masks(h):
        _, system = source_system(reach, h.n)
        val = seen.get(system)
        if val is None:
            val = dtd_of_system(h.n, system)
            seen[system] = val
        worst = max(worst, val)
    return worst


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------

@dataclass
class ForestCheck:
    ok: bool
    reason: str = ""
    path: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def explain_forest(d: OrientedDag, f: EliminationForest) -> ForestCheck:
    """Replay the recursive construction deletion by deletion."""
    sys_ = _System(d.n, source_system(d.reach_masks, d.n)[1])

    def replay(rem: int, nodes: Sequence[ForestNode], path: list[int]) -> ForestCheck:
        comps = sys_.components(rem)
        if len(nodes) != len(comps):
            return ForestCheck(False, f"{len(nodes)} subtrees for {len(comps)} residual components", path)
        claimed = 0
        for node in nodes:
            v = node.vertex
            if not (0 <= v < d.n) or not sys_.src >> v & 1:
                return ForestCheck(False, f"node {v} is not a source", path + [v])
            if not rem >> v & 1:
                return ForestCheck(False, f"source {v} was already deleted", path + [v])
            comp = next(c for c in comps if c >> v & 1)
            if claimed & comp:
                return ForestCheck(False, f"two subtrees rooted in the component of {v}", path + [v])
            claimed |= comp
            res = replay(comp & ~sys_.closed[v], node.children, path + [v])
            if not res:
                return res
        return ForestCheck(True)

    return replay(_full(d.n), f.roots, [])


def validate_forest(d: OrientedDag, f: EliminationForest) -> bool:
    return explain_forest(d, f).ok


def private_pairs(d: OrientedDag) -> list[tuple[int, int, int]]:
    """Triples ``(u, v, w)``: sources u < v and a vertex w reached by exactly u and v."""
    rm = d.reach_masks
    srcs = sorted(d.sources)
    out = []
    for w in range(d.n):
        hit = [s for s in srcs if rm[s] >> w & 1]
        if len(hit) == 2:
            out.append((hit[0], hit[1], w))
    return out
