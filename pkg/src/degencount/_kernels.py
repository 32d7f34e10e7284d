"""Compiled enumeration kernel for exhaustive small-graph sweeps.

``unique_systems`` walks every acyclic orientation of a graph on at most 8
vertices and returns the distinct source systems, each packed into one
64-bit word: byte ``s`` holds ``{s} | R(s)`` for every source ``s`` and is
zero for non-sources.  Falls back to the pure-Python enumerator when numba is
unavailable.
"""
from __future__ import annotations

import numpy as np

from .graph import Graph
from .orientations import orientation_masks, source_system

try:  # pragma: no cover - exercised implicitly
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

PACK_LIMIT = 8


def pack_system(n: int, system) -> int:
    key = 0
    for s, r in system:
        key |= ((r | (1 << s)) & 0xFF) << (8 * s)
    return key


def unpack_system(key: int, n: int) -> tuple[tuple[int, int], ...]:
    out = []
    for s in range(n):
        byte = (key >> (8 * s)) & 0xFF
        if byte:
            out.append((s, byte & ~(1 << s)))
    return tuple(out)


def _unique_systems_py(g: Graph) -> list[int]:
    keys = set()
    for _, reach in orientation_masks(g):
        keys.add(pack_system(g.n, source_system(reach, g.n)[1]))
    return sorted(keys)


if njit is not None:

    @njit(cache=True)
    def _enumerate(n, earlier):
        reach = np.zeros((n + 1, n), dtype=np.int64)
        ins = np.zeros(n + 1, dtype=np.int64)
        started = np.zeros(n + 1, dtype=np.bool_)
        found = []
        full = (1 << n) - 1
        v = 0
        while v >= 0:
            if v == n:
                covered = 0
                for x in range(n):
                    covered |= reach[n, x]
                src = full & ~covered
                key = np.uint64(0)
                for s in range(n):
                    if (src >> s) & 1:
                        byte = (reach[n, s] & ~src) | (1 << s)
                        key |= np.uint64(byte) << np.uint64(8 * s)
                found.append(key)
                v -= 1
                continue
            nb = earlier[v]
            if not started[v]:
                started[v] = True
                cur = nb
            else:
                if ins[v] == 0:
                    started[v] = False
                    v -= 1
                    continue
                cur = (ins[v] - 1) & nb
            ins[v] = cur
            outs = nb & ~cur
            rv = 0
            for w in range(v):
                if (outs >> w) & 1:
                    rv |= (1 << w) | reach[v, w]
            if rv & cur:
                continue
            add = rv | (1 << v)
            for x in range(v):
                r = reach[v, x]
                if ((cur >> x) & 1) or (r & cur):
                    r |= add
                reach[v + 1, x] = r
            reach[v + 1, v] = rv
            v += 1
        return found


if njit is not None:

    @njit(cache=True)
    def _dtd_rec(rem, src, closed, memo):
        if memo[rem] >= 0:
            return memo[rem]
        worst = 0
        left = rem & src
        while left:
            low = left & -left
            seed = 0
            while (low >> seed) != 1:
                seed += 1
            comp = closed[seed] & rem
            srcs = low
            grew = True
            while grew:
                grew = False
                for s in range(closed.shape[0]):
                    if ((left >> s) & 1) and not ((srcs >> s) & 1) and (closed[s] & comp):
                        comp |= closed[s] & rem
                        srcs |= 1 << s
                        grew = True
            left &= ~srcs
            best = 1 << 30
            for s in range(closed.shape[0]):
                if (comp >> s) & 1 and (src >> s) & 1:
                    val = 1 + _dtd_rec(comp & ~closed[s], src, closed, memo)
                    if val < best:
                        best = val
            if best > worst:
                worst = best
        memo[rem] = worst
        return worst

    @njit(cache=True)
    def _packed_dtds(keys, n):
        out = np.zeros(keys.shape[0], dtype=np.int64)
        closed = np.zeros(n, dtype=np.int64)
        memo = np.empty(1 << n, dtype=np.int64)
        for i in range(keys.shape[0]):
            key = keys[i]
            src = 0
            for s in range(n):
                byte = np.int64((key >> np.uint64(8 * s)) & np.uint64(0xFF))
                closed[s] = byte
                if byte:
                    src |= 1 << s
            memo[:] = -1
            out[i] = _dtd_rec((1 << n) - 1, src, closed, memo)
        return out


def packed_dtds(keys: list[int], n: int) -> list[int]:
    """dtd of each packed source system (compiled; Python fallback)."""
    if njit is None:
        from .elimination import dtd_of_system

        return [dtd_of_system(n, unpack_system(k, n)) for k in keys]
    arr = np.array(keys, dtype=np.uint64)
    return [int(x) for x in _packed_dtds(arr, n)]


def unique_system_keys(g: Graph) -> list[int]:
    if njit is None or g.n > PACK_LIMIT or g.n == 0:
        return _unique_systems_py(g)
    earlier = np.array([g.masks[v] & ((1 << v) - 1) for v in range(g.n)], dtype=np.int64)
    return sorted({int(k) for k in _enumerate(g.n, earlier)})


def unique_systems(g: Graph) -> list[tuple[tuple[int, int], ...]]:
    """Distinct source systems over all acyclic orientations of ``g``."""
    return [unpack_system(k, g.n) for k in unique_system_keys(g)]
