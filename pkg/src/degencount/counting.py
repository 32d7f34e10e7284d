"""Subgraph and induced-subgraph counts as linear combinations of hom counts."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Iterator

from .graph import (Graph, automorphism_count, canonical_form, canonical_label,
                    require_size)
from .homcount import HomReport, count_hom_report

MAX_SPASM = 9
MAX_IND = 8


class NonIntegralCount(ArithmeticError):
    pass


@dataclass(frozen=True)
class Expansion:
    """Terms ``(graph, coefficient)``; graphs are canonical and pairwise
    non-isomorphic, coefficients nonzero."""

    terms: tuple[tuple[Graph, Fraction], ...]

    @classmethod
    def from_dict(cls, acc: dict[bytes, tuple[Graph, Fraction]]) -> "Expansion":
        items = [(g, c) for g, c in acc.values() if c != 0]
        items.sort(key=lambda t: (-t[0].n, -t[0].m, canonical_label(t[0])))
        return cls(tuple(items))

    def coefficient(self, g: Graph) -> Fraction:
        lab = canonical_label(g)
        for h, c in self.terms:
            if canonical_label(h) == lab:
                return c
        return Fraction(0)

    def graphs(self) -> list[Graph]:
        return [g for g, _ in self.terms]

    def evaluate(self, hom: Callable[[Graph], int]) -> int:
        total = sum((c * hom(g) for g, c in self.terms), Fraction(0))
        if total.denominator != 1:
            raise NonIntegralCount(f"expansion evaluated to the non-integer {total}")
        return int(total)

    def format(self) -> str:
        """One line per term: ``num/den n=<k> u-v u-v ...``."""
        lines = []
        for g, c in self.terms:
            edges = " ".join(f"{u}-{v}" for u, v in g.edges())
            lines.append(f"{c.numerator}/{c.denominator} n={g.n}" + (f" {edges}" if edges else ""))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def parse(cls, text: str) -> "Expansion":
        acc: dict[bytes, tuple[Graph, Fraction]] = {}
        for line in text.splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split()
            coeff = Fraction(parts[0])
            n = int(parts[1].removeprefix("n="))
            edges = [tuple(int(x) for x in p.split("-")) for p in parts[2:]]
            g = canonical_form(Graph(n, edges))
            _add(acc, g, coeff)
        return cls.from_dict(acc)


def _add(acc: dict, g: Graph, coeff: Fraction) -> None:
    lab = canonical_label(g)
    if lab in acc:
        h, c = acc[lab]
        acc[lab] = (h, c + coeff)
    else:
        acc[lab] = (canonical_form(g), Fraction(coeff))


def independent_partitions(h: Graph) -> Iterator[list[int]]:
    """Restricted-growth strings of V(h) whose blocks are independent sets."""
    n = h.n
    block = [0] * n
    masks = [0] * n  # vertex masks per block
    adj = h.masks

    def rec(v: int, used: int) -> Iterator[list[int]]:
        if v == n:
            yield block[:]
            return
        for b in range(used + 1):
            if b < used and adj[v] & masks[b]:
                continue
            block[v] = b
            masks[b] |= 1 << v
            yield from rec(v + 1, max(used, b + 1))
            masks[b] &= ~(1 << v)

    if n == 0:
        yield []
        return
    yield from rec(0, 0)


def quotient(h: Graph, blocks: list[int]) -> Graph:
    k = max(blocks, default=-1) + 1
    edges = {(min(blocks[u], blocks[v]), max(blocks[u], blocks[v])) for u, v in h.edges()}
    return Graph(k, sorted(edges))


def mobius(blocks: list[int]) -> int:
    sizes: dict[int, int] = {}
    for b in blocks:
        sizes[b] = sizes.get(b, 0) + 1
    out = 1
    for s in sizes.values():
        out *= (-1) ** (s - 1) * factorial(s - 1)
    return out


def spasm(h: Graph) -> list[Graph]:
    """All quotients of ``h`` by partitions into independent sets, up to isomorphism."""
    require_size(h.n, MAX_SPASM, "spasm")
    seen: dict[bytes, Graph] = {}
    for blocks in independent_partitions(h):
        q = quotient(h, blocks)
        seen.setdefault(canonical_label(q), canonical_form(q))
    return sorted(seen.values(), key=lambda g: (-g.n, -g.m, canonical_label(g)))


@lru_cache(maxsize=1024)
def sub_expansion(h: Graph) -> Expansion:
    """sub(h, G) = sum of coefficient * hom(term, G)."""
    require_size(h.n, MAX_SPASM, "sub_expansion")
    acc: dict[bytes, tuple[Graph, Fraction]] = {}
    aut = automorphism_count(h)
    for blocks in independent_partitions(h):
        _add(acc, quotient(h, blocks), Fraction(mobius(blocks), aut))
    return Expansion.from_dict(acc)


def injective_count(h: Graph, c: Graph) -> int:
    """Injective homomorphisms h -> c by backtracking (small graphs)."""
    k, n = h.n, c.n
    if k > n:
        return 0
    earlier = [[u for u in h.adj[v] if u < v] for v in range(k)]
    img = [0] * k
    used = [False] * n

    def rec(i: int) -> int:
        if i == k:
            return 1
        total = 0
        for x in range(n):
            if not used[x] and all(x in c.adj[img[u]] for u in earlier[i]):
                img[i] = x
                used[x] = True
                total += rec(i + 1)
                used[x] = False
        return total

    return rec(0)


def supergraph_classes(h: Graph) -> list[Graph]:
    """Graphs on V(h) containing h, up to isomorphism."""
    require_size(h.n, MAX_IND, "ind_expansion")
    non_edges = [(u, v) for u, v in combinations(range(h.n), 2) if not h.has_edge(u, v)]
    seen: dict[bytes, Graph] = {}
    base = h.edges()
    for mask in range(1 << len(non_edges)):
        extra = [non_edges[i] for i in range(len(non_edges)) if mask >> i & 1]
        g = Graph(h.n, base + extra)
        seen.setdefault(canonical_label(g), canonical_form(g))
    return list(seen.values())


def ind_sub_coefficients(h: Graph) -> dict[bytes, tuple[Graph, Fraction]]:
    """ind(h, G) = sum over classes C of a_C * sub(C, G), with
    a_C = (-1)^(e(C)-e(h)) * sub(h, C)."""
    aut = automorphism_count(h)
    out: dict[bytes, tuple[Graph, Fraction]] = {}
    for c in supergraph_classes(h):
        inj = injective_count(h, c)
        if inj % aut:
            raise AssertionError("injective count not divisible by the automorphism count")
        sign = -1 if (c.m - h.m) % 2 else 1
        _add(out, c, Fraction(sign * (inj // aut)))
    return out


def ind_sub_coefficients_labelled(h: Graph) -> dict[bytes, tuple[Graph, Fraction]]:
    """The same coefficients from labelled supergraphs of the fixed copy of h:
    a labelled supergraph in class C stands for sub(h, C) = N_C * aut(C) / aut(h)
    where N_C counts labelled supergraphs of h in class C."""
    require_size(h.n, MAX_IND, "ind_expansion")
    non_edges = [(u, v) for u, v in combinations(range(h.n), 2) if not h.has_edge(u, v)]
    tally: dict[bytes, tuple[Graph, int]] = {}
    base = h.edges()
    for mask in range(1 << len(non_edges)):
        extra = [non_edges[i] for i in range(len(non_edges)) if mask >> i & 1]
        g = Graph(h.n, base + extra)
        lab = canonical_label(g)
        sign = -1 if len(extra) % 2 else 1
        if lab in tally:
            tally[lab] = (tally[lab][0], tally[lab][1] + sign)
        else:
            tally[lab] = (canonical_form(g), sign)
    aut_h = automorphism_count(h)
    out: dict[bytes, tuple[Graph, Fraction]] = {}
    for lab, (g, signed) in tally.items():
        _add(out, g, Fraction(signed * automorphism_count(g), aut_h))
    return out


@lru_cache(maxsize=1024)
def ind_expansion(h: Graph) -> Expansion:
    """ind(h, G) as a combination of hom counts."""
    acc: dict[bytes, tuple[Graph, Fraction]] = {}
    for g, a in ind_sub_coefficients(h).values():
        for term, c in sub_expansion(g).terms:
            _add(acc, term, a * c)
    return Expansion.from_dict(acc)


class HomMemo:
    """hom(term, host) memoised per canonical class of the term for one host."""

    def __init__(self, host: Graph, restrict_candidates: bool = True, workers: int = 1):
        self.host = host
        self.restrict = restrict_candidates
        self.workers = workers
        self.reports: dict[bytes, HomReport] = {}

    def report(self, g: Graph) -> HomReport:
        lab = canonical_label(g)
        rep = self.reports.get(lab)
        if rep is None:
            rep = count_hom_report(g, self.host, self.restrict, self.workers)
            self.reports[lab] = rep
        return rep

    def __call__(self, g: Graph) -> int:
        return self.report(g).count


def count_sub(h: Graph, g: Graph, hom: Callable[[Graph], int] | None = None) -> int:
    val = sub_expansion(h).evaluate(hom or HomMemo(g))
    if val < 0:
        raise NonIntegralCount(f"negative subgraph count {val}")
    return val


def count_ind(h: Graph, g: Graph, hom: Callable[[Graph], int] | None = None) -> int:
    val = ind_expansion(h).evaluate(hom or HomMemo(g))
    if val < 0:
        raise NonIntegralCount(f"negative induced count {val}")
    return val
