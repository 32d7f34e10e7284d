"""Constant-space homomorphism counting over DAG elimination forests.

A forest node ``v`` owns the pattern vertices ``{v} | R(v)`` that none of
its ancestors already reached.  Fixing the image of ``v`` and of those
vertices leaves the subtrees of ``v`` independent, so the count for ``v`` is
a sum over extensions of the product of child counts.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .elimination import EliminationForest, ForestNode, dtd_dag, explain_forest
from .graph import Graph, OrientedDag, degeneracy_orientation, pattern_cap, require_size
from .orientations import acyclic_orientations

WORD_BYTES = 8


class InvalidForest(ValueError):
    pass


@dataclass
class HomStats:
    """Instrumentation: recursion depth and auxiliary words in use.

    The auxiliary state is the assignment array (one slot per pattern
    vertex) plus, per active recursion frame, the host-vertex cursor, the two
    accumulators and one candidate cursor per vertex the frame assigns.
    Integers are counted as one word each.
    """

    max_depth: int = 0
    peak_words: int = 0
    words: int = 0
    calls: int = 0
    extensions: int = 0

    def enter(self, depth: int, frame_words: int) -> None:
        self.calls += 1
        self.words += frame_words
        if self.words > self.peak_words:
            self.peak_words = self.words
        if depth > self.max_depth:
            self.max_depth = depth

    def leave(self, frame_words: int) -> None:
        self.words -= frame_words

    @property
    def peak_aux_bytes(self) -> int:
        return self.peak_words * WORD_BYTES

    def merge(self, other: "HomStats") -> None:
        self.max_depth = max(self.max_depth, other.max_depth)
        self.peak_words = max(self.peak_words, other.peak_words)
        self.calls += other.calls
        self.extensions += other.extensions


@dataclass(frozen=True)
class PartialHom:
    """Pattern vertex -> host vertex or ``None``."""

    assignment: tuple

    @classmethod
    def empty(cls, k: int) -> "PartialHom":
        return cls((None,) * k)

    def get(self, v: int):
        return self.assignment[v]

    def assigned(self) -> frozenset:
        return frozenset(v for v, x in enumerate(self.assignment) if x is not None)

    def extend(self, updates: dict) -> "PartialHom":
        a = list(self.assignment)
        for v, x in updates.items():
            a[v] = x
        return PartialHom(tuple(a))

    def is_consistent(self, host: OrientedDag, pattern: OrientedDag) -> bool:
        a = self.assignment
        for x, y in pattern.arcs():
            if a[x] is not None and a[y] is not None and a[y] not in host.out[a[x]]:
                return False
        return True


# --------------------------------------------------------------------------
# static extension plans
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Step:
    vertex: int
    anchor: int  # assigned in-neighbour whose image's out-neighbours are the candidates; -1 for the node itself
    outs: tuple[int, ...]  # assigned y with vertex -> y
    ins: tuple[int, ...]  # assigned y with y -> vertex (anchor excluded)


@dataclass(frozen=True)
class _Plan:
    steps: tuple[_Step, ...]
    pin: int  # for the node itself: an assigned out-neighbour, or -1
    children: tuple["_Plan", ...]

    @property
    def frame_words(self) -> int:
        return 3 + len(self.steps)


def _make_steps(pattern: OrientedDag, v: int, assigned: set[int]) -> list[_Step]:
    rm = pattern.reach_masks
    new = [x for x in pattern.topo if (x == v or rm[v] >> x & 1) and x not in assigned]
    done = set(assigned)
    steps = []
    for x in new:
        if x == v:
            anchor = -1
        else:
            anchors = sorted(y for y in pattern.inc[x] if y in done)
            if not anchors:
                raise AssertionError("reachable vertex without an assigned in-neighbour")
            anchor = anchors[0]
        outs = tuple(sorted(y for y in pattern.out[x] if y in done))
        ins = tuple(sorted(y for y in pattern.inc[x] if y in done and y != anchor))
        steps.append(_Step(x, anchor, outs, ins))
        done.add(x)
    return steps


def _build_plan(pattern: OrientedDag, node: ForestNode, assigned: set[int], restrict: bool) -> _Plan:
    steps = _make_steps(pattern, node.vertex, assigned)
    first = steps[0]
    pin = first.outs[0] if (restrict and first.outs) else -1
    now = assigned | {s.vertex for s in steps}
    kids = tuple(_build_plan(pattern, c, now, restrict) for c in node.children)
    return _Plan(tuple(steps), pin, kids)


# --------------------------------------------------------------------------
# the counter
# --------------------------------------------------------------------------

def _extend(host_out, host_inc, steps: Sequence[_Step], i: int, sigma: list, stats: HomStats | None) -> Iterator[None]:
    """Assign steps[i:] in order; yields once per consistent completion.
    ``sigma`` is mutated in place and restored on backtrack."""
    if i == len(steps):
        if stats is not None:
            stats.extensions += 1
        yield None
        return
    st = steps[i]
    for w in host_out[sigma[st.anchor]]:
        ok = True
        for y in st.outs:
            if sigma[y] not in host_out[w]:
                ok = False
                break
        if ok:
            for y in st.ins:
                if w not in host_out[sigma[y]]:
                    ok = False
                    break
        if not ok:
            continue
        sigma[st.vertex] = w
        yield from _extend(host_out, host_inc, steps, i + 1, sigma, stats)
        sigma[st.vertex] = None


def _node_candidates(host_n: int, host_inc, plan: _Plan, sigma: list):
    if plan.pin >= 0:
        return host_inc[sigma[plan.pin]]
    return range(host_n)


def _count_node(host_n, host_out, host_inc, plan: _Plan, sigma: list, depth: int,
                stats: HomStats | None, roots: Sequence[int] | None = None) -> int:
    fw = plan.frame_words
    if stats is not None:
        stats.enter(depth, fw)
    first = plan.steps[0]
    v = first.vertex
    c = 0
    cands = roots if roots is not None else _node_candidates(host_n, host_inc, plan, sigma)
    for u in cands:
        ok = True
        for y in first.outs:
            if sigma[y] not in host_out[u]:
                ok = False
                break
        if not ok:
            continue
        sigma[v] = u
        for _ in _extend(host_out, host_inc, plan.steps, 1, sigma, stats):
            p = 1
            for child in plan.children:
                p *= _count_node(host_n, host_out, host_inc, child, sigma, depth + 1, stats)
                if not p:
                    break
            c += p
        sigma[v] = None
    if stats is not None:
        stats.leave(fw)
    return c


def _forest_plans(pattern: OrientedDag, forest: EliminationForest, restrict: bool) -> list[_Plan]:
    check = explain_forest(pattern, forest)
    if not check.ok:
        raise InvalidForest(f"invalid elimination forest: {check.reason} (path {check.path})")
    return [_build_plan(pattern, r, set(), restrict) for r in forest.roots]


def _root_chunk(args) -> tuple[int, HomStats]:
    host_n, host_out, host_inc, plan, k, lo, hi = args
    stats = HomStats()
    sigma = [None] * k
    stats.enter(0, k)
    val = _count_node(host_n, host_out, host_inc, plan, sigma, 1, stats, roots=range(lo, hi))
    return val, stats


def count_hom_dag(host: OrientedDag, pattern: OrientedDag, forest: EliminationForest,
                  stats: HomStats | None = None, restrict_candidates: bool = True,
                  workers: int = 1) -> int:
    """Number of direction-preserving homomorphisms ``pattern -> host``.

    ``forest`` must be a valid elimination forest of ``pattern``; it is
    checked before any counting.  With ``restrict_candidates`` a non-root
    node whose pattern vertex has an already-mapped out-neighbour ``y`` only
    tries host in-neighbours of the image of ``y``; the count is unchanged.
    ``workers > 1`` splits the host-vertex loop of each root across processes.
    """
    plans = _forest_plans(pattern, forest, restrict_candidates)
    k = pattern.n
    host_out, host_inc, hn = host.out, host.inc, host.n
    total = 1
    for plan in plans:
        if workers > 1 and hn > 1:
            step = -(-hn // workers)
            jobs = [(hn, host_out, host_inc, plan, k, lo, min(hn, lo + step)) for lo in range(0, hn, step)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_root_chunk, jobs))
            val = sum(p for p, _ in parts)
            if stats is not None:
                for _, s in parts:
                    stats.merge(s)
        else:
            sigma = [None] * k
            if stats is not None:
                stats.enter(0, k)
            val = _count_node(hn, host_out, host_inc, plan, sigma, 1, stats)
            if stats is not None:
                stats.leave(k)
        total *= val
        if not total:
            break
    return total


def extension_enumerate(host: OrientedDag, pattern: OrientedDag, v: int, u: int,
                        sigma: PartialHom) -> Iterator[PartialHom]:
    """Every consistent extension of ``sigma`` mapping ``v`` to ``u`` and all
    still-unassigned vertices reachable from ``v``."""
    if sigma.get(v) is not None:
        raise ValueError(f"pattern vertex {v} is already assigned")
    assigned = set(sigma.assigned())
    steps = _make_steps(pattern, v, assigned)
    work = list(sigma.assignment)
    first = steps[0]
    for y in first.outs:
        if work[y] not in host.out[u]:
            return
    work[v] = u
    for _ in _extend(host.out, host.inc, steps, 1, work, None):
        yield PartialHom(tuple(work))


# --------------------------------------------------------------------------
# undirected counts
# --------------------------------------------------------------------------

@lru_cache(maxsize=256)
def pattern_plans(pattern: Graph) -> tuple[tuple[OrientedDag, EliminationForest, int], ...]:
    """Every labelled acyclic orientation with a minimum-depth forest and its dtd."""
    out = []
    for d in acyclic_orientations(pattern):
        depth, forest = dtd_dag(d)
        out.append((d, forest, depth))
    return tuple(out)


@lru_cache(maxsize=8)
def oriented_host(host: Graph) -> tuple[OrientedDag, int]:
    return degeneracy_orientation(host)


@dataclass
class HomReport:
    count: int
    degeneracy: int
    orientations: int
    dtds: list[int] = field(default_factory=list)
    peak_aux_bytes: int = 0
    max_depth: int = 0


def count_hom_report(pattern: Graph, host: Graph, restrict_candidates: bool = True,
                     workers: int = 1) -> HomReport:
    require_size(pattern.n, pattern_cap(), "count_hom (pattern)")
    host_dag, d = oriented_host(host)
    if pattern.n == 0:
        return HomReport(1, d, 0)
    stats = HomStats()
    total = 0
    dtds = []
    plans = pattern_plans(pattern)
    for dag, forest, depth in plans:
        total += count_hom_dag(host_dag, dag, forest, stats, restrict_candidates, workers)
        dtds.append(depth)
    return HomReport(total, d, len(plans), dtds, stats.peak_aux_bytes, stats.max_depth)


def count_hom(pattern: Graph, host: Graph, restrict_candidates: bool = True, workers: int = 1) -> int:
    """hom(pattern, host): sum over acyclic pattern orientations of directed
    counts into the degeneracy-oriented host."""
    return count_hom_report(pattern, host, restrict_candidates, workers).count
