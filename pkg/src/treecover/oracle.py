"""Exponential ground truth for tree covers on small graphs.

Everything here works by exhaustive search and is independent of the element
decomposition; it exists to referee the polynomial algorithm.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Iterator

import numpy as np

from .covers import TreeCover
from .graph import Graph

DEFAULT_EDGE_BUDGET = 16
DEFAULT_VERTEX_BUDGET = 16


class BudgetExceeded(RuntimeError):
    pass


def _as_graph(obj) -> tuple[Graph, tuple[int, int] | None]:
    if isinstance(obj, Graph):
        return obj, None
    return obj.as_graph(), obj.end_nodes


def _check_budget(g: Graph, budget: int) -> None:
    if g.m > budget:
        raise BudgetExceeded(f"{g.m} edges exceeds oracle budget {budget}")


def _edge_order(g: Graph) -> list[int]:
    """Edges in BFS discovery order so that parts tend to grow contiguously."""
    active = g.active_vertices()
    if not active:
        return []
    order, seen_e = [], set()
    seen_v = {active[0]}
    queue = [active[0]]
    for v in queue:
        for w, e in sorted(g.adjacency[v]):
            if e not in seen_e:
                seen_e.add(e)
                order.append(e)
            if w not in seen_v:
                seen_v.add(w)
                queue.append(w)
    order += [e for e in range(g.m) if e not in seen_e]
    return order


def _search(
    g: Graph,
    k: int,
    leaf: Callable[[list[int]], bool] | None = None,
    split_nodes: Iterable[int] = (),
) -> Iterator[tuple[int, ...]]:
    """Yield every partition of the edges into exactly ``k`` trees.

    Each result maps edge id -> part index; parts are numbered by first
    appearance in a fixed edge order, which removes label symmetry.  Pruning uses
    per-part union-find for acyclicity and the identity sum_v t_v = m + k, where
    t_v is the number of parts meeting v (it holds exactly when every part is a tree).
    ``split_nodes`` must end up in two or more parts; ``leaf`` filters results.
    """
    m, n = g.m, g.vertex_count
    order = _edge_order(g)
    ends = [g.edges[e] for e in order]
    target = m + k
    uf = [list(range(n)) for _ in range(k)]
    cnt = [[0] * k for _ in range(n)]
    t = [0] * n
    rem = [g.degree(v) for v in range(n)]
    active = [v for v in range(n) if rem[v]]
    base = len(active)  # every active vertex will meet at least one part
    assign = [0] * m
    split = [False] * n
    for x in split_nodes:
        split[x] = True
    state = {"extra": 0}  # sum over vertices of max(t_v - 1, 0)

    def find(p, x):
        par = uf[p]
        while par[x] != x:
            x = par[x]
        return x

    def rec(i: int, used: int):
        if i == m:
            if used == k and base + state["extra"] == target:
                result = [0] * m
                for j, e in enumerate(order):
                    result[e] = assign[j]
                if leaf is None or leaf(result):
                    yield tuple(result)
            return
        if m - i < k - used:
            return
        a, b = ends[i]
        for p in range(min(used + 1, k)):
            ra, rb = find(p, a), find(p, b)
            if ra == rb:
                continue
            delta = 0
            if cnt[a][p] == 0 and t[a] > 0:
                delta += 1
            if cnt[b][p] == 0 and t[b] > 0:
                delta += 1
            if base + state["extra"] + delta > target:
                continue
            # both edges of a required split node of degree 2 must differ
            if rem[a] == 1 and split[a] and t[a] == 1 and cnt[a][p] > 0:
                continue
            if rem[b] == 1 and split[b] and t[b] == 1 and cnt[b][p] > 0:
                continue
            uf[p][ra] = rb
            for x in (a, b):
                if cnt[x][p] == 0:
                    t[x] += 1
                cnt[x][p] += 1
                rem[x] -= 1
            state["extra"] += delta
            assign[i] = p
            yield from rec(i + 1, max(used, p + 1))
            state["extra"] -= delta
            for x in (a, b):
                rem[x] += 1
                cnt[x][p] -= 1
                if cnt[x][p] == 0:
                    t[x] -= 1
            uf[p][ra] = ra

    yield from rec(0, 0)


def _parts(assignment: tuple[int, ...], k: int) -> list[frozenset[int]]:
    parts: list[set[int]] = [set() for _ in range(k)]
    for e, p in enumerate(assignment):
        parts[p].add(e)
    return [frozenset(p) for p in parts]


def nash_williams_arboricity(g: Graph, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> int:
    """max over vertex subsets S (|S| >= 2) of ceil(m_S / (|S| - 1))."""
    verts = g.active_vertices()
    n = len(verts)
    if n > vertex_budget:
        raise BudgetExceeded(f"{n} vertices exceeds arboricity budget {vertex_budget}")
    if g.m == 0:
        return 0
    local = {v: i for i, v in enumerate(verts)}
    subsets = np.arange(1 << n, dtype=np.int64)
    inside = np.zeros(1 << n, dtype=np.int64)
    for u, v in g.edges:
        inside += ((subsets >> local[u]) & 1) & ((subsets >> local[v]) & 1)
    size = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        size += (subsets >> i) & 1
    ok = size >= 2
    ratio = -(-inside[ok] // (size[ok] - 1))
    return int(ratio.max())


def _lower_bound(g: Graph) -> int:
    if len(g.active_vertices()) <= DEFAULT_VERTEX_BUDGET:
        return max(1, nash_williams_arboricity(g))
    # density bound on the whole graph
    return max(1, math.ceil(g.m / max(1, len(g.active_vertices()) - 1)))


def bf_tree_number(obj, budget: int = DEFAULT_EDGE_BUDGET) -> int:
    """Exact tree number by exhaustive search (``obj`` is a Graph or an element)."""
    g, _ = _as_graph(obj)
    _check_budget(g, budget)
    if g.m == 0:
        return 0
    k = _lower_bound(g)
    while True:
        for _ in _search(g, k):
            return k
        k += 1


def bf_enumerate_min_covers(obj, limit: int | None = None, budget: int = DEFAULT_EDGE_BUDGET) -> list[TreeCover]:
    """Minimal tree covers (up to ``limit``), canonically sorted."""
    g, ends = _as_graph(obj)
    _check_budget(g, budget)
    k = bf_tree_number(g, budget)
    out = []
    for assignment in _search(g, k):
        out.append(assignment)
        if limit is not None and len(out) >= limit:
            break
    covers = [_canonical(_parts(a, k)) for a in out]
    covers.sort()
    return [TreeCover.from_parts(c, range(g.m), ends) for c in covers]


def _canonical(parts: list[frozenset[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


def _exists(g: Graph, k: int, leaf=None, split_nodes=()) -> bool:
    for _ in _search(g, k, leaf, split_nodes):
        return True
    return False


def bf_simultaneous_fit(obj, nodes: Iterable[int], budget: int = DEFAULT_EDGE_BUDGET) -> bool:
    """Some minimal tree cover puts every listed node in two or more trees."""
    g, _ = _as_graph(obj)
    _check_budget(g, budget)
    nodes = list(nodes)
    k = bf_tree_number(g, budget)
    return _exists(g, k, _splits_all(g, nodes, k), nodes)


def _splits_all(g: Graph, nodes: list[int], k: int):
    def leaf(assignment):
        for x in nodes:
            if len({assignment[e] for _, e in g.adjacency[x]}) < 2:
                return False
        return True

    return leaf


def bf_is_fit(obj, x: int, budget: int = DEFAULT_EDGE_BUDGET) -> bool:
    """``x`` (degree 2) is covered by two distinct trees in some minimal cover."""
    g, _ = _as_graph(obj)
    if g.degree(x) != 2:
        raise ValueError(f"vertex {x} does not have degree 2")
    return bf_simultaneous_fit(g, [x], budget)


def _proper_leaf(g: Graph, u: int, v: int):
    def leaf(assignment):
        pu = {assignment[e] for _, e in g.adjacency[u]}
        pv = {assignment[e] for _, e in g.adjacency[v]}
        return any(a != b for a in pu for b in pv)

    return leaf


def bf_proper_exists(obj, end_nodes: tuple[int, int] | None = None, required: Iterable[int] = (),
                     budget: int = DEFAULT_EDGE_BUDGET) -> bool:
    """Some minimal cover puts the end nodes in distinct trees (and splits ``required``)."""
    g, ends = _as_graph(obj)
    ends = end_nodes or ends
    if ends is None:
        raise ValueError("end nodes required")
    _check_budget(g, budget)
    required = list(required)
    k = bf_tree_number(g, budget)
    proper = _proper_leaf(g, *ends)
    splits = _splits_all(g, required, k)
    return _exists(g, k, lambda a: proper(a) and splits(a), required)


def bf_max_simultaneous_fit(obj, candidates: Iterable[int], budget: int = DEFAULT_EDGE_BUDGET) -> int:
    """Largest number of candidates that some minimal cover splits at once."""
    g, _ = _as_graph(obj)
    _check_budget(g, budget)
    candidates = list(candidates)
    k = bf_tree_number(g, budget)
    best = 0
    for a in _search(g, k):
        c = sum(1 for x in candidates if len({a[e] for _, e in g.adjacency[x]}) >= 2)
        best = max(best, c)
        if best == len(candidates):
            break
    return best
