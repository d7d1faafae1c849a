"""Deterministic and seeded cut-outerplanar instance families."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .graph import Graph


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def gen_diamond() -> Graph:
    return Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def gen_fan(n: int) -> Graph:
    """(n+2)-cycle with chords (0,2), ..., (0,n); fan(1) is taken to be the diamond."""
    if n < 1:
        raise ValueError("fan needs n >= 1")
    if n == 1:
        return gen_diamond()
    k = n + 2
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(0, j) for j in range(2, n + 1)]
    return Graph.from_edges(edges)


def gen_necklace(n: int) -> Graph:
    """Core cycle on 2n vertices with a triangle glued at every even core vertex.

    n = 1 uses a triangle core with one petal (a figure eight).
    """
    if n < 1:
        raise ValueError("necklace needs n >= 1")
    core = 3 if n == 1 else 2 * n
    edges = [(i, (i + 1) % core) for i in range(core)]
    nxt = core
    for j in range(n):
        c = 2 * j
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(c, a), (a, b), (b, c)]
    return Graph.from_edges(edges)


def gen_gap_family(n: int) -> Graph:
    if n < 2:
        raise ValueError("gap family needs n >= 2")
    return gen_necklace(n)


def random_chords(rng: random.Random, size: int, density: float = 0.5) -> list[tuple[int, int]]:
    """Non-crossing chord set on positions 0..size-1 by recursive arc splitting."""
    chords = []
    stack = [(0, size - 1)]
    while stack:
        lo, hi = stack.pop()
        # arc lo..hi closed by an edge (lo, hi); pick an apex to split into two arcs
        if hi - lo < 2:
            continue
        mid = rng.randint(lo + 1, hi - 1)
        for a, b in ((lo, mid), (mid, hi)):
            if b - a >= 2 and rng.random() < density:
                chords.append((a, b))
                stack.append((a, b))
            elif b - a >= 2:
                stack.append((a, b))
    return chords


def gen_random_cut_outerplanar(seed: int, block_count: int, max_block_size: int,
                               chord_density: float = 0.5) -> Graph:
    """Random blocks (cycle plus non-crossing chords) glued at random existing vertices."""
    if block_count < 1 or max_block_size < 3:
        raise ValueError("need block_count >= 1 and max_block_size >= 3")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    n = 0
    for b in range(block_count):
        size = rng.randint(3, max_block_size)
        if b == 0:
            verts = list(range(size))
            n = size
        else:
            glue = rng.randrange(n)
            verts = [glue] + list(range(n, n + size - 1))
            n += size - 1
            rng.shuffle(verts)
        local = [(i, (i + 1) % size) for i in range(size)]
        local += [c for c in random_chords(rng, size, chord_density) if c != (0, size - 1)]
        edges += [(verts[a], verts[b]) for a, b in local]
    return Graph.from_edges(edges)


# --- exhaustive small corpus -------------------------------------------------

def chord_sets(size: int, max_chords: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All non-crossing chord sets of a ``size``-gon with at most ``max_chords`` chords."""
    all_chords = [(a, b) for a, b in combinations(range(size), 2) if 1 < b - a < size - 1]

    def crosses(c, d):
        (a, b), (x, y) = c, d
        return (a < x < b < y) or (x < a < y < b)

    def rec(start, chosen):
        yield tuple(chosen)
        if len(chosen) == max_chords:
            return
        for i in range(start, len(all_chords)):
            c = all_chords[i]
            if all(not crosses(c, d) for d in chosen):
                chosen.append(c)
                yield from rec(i + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def block_shapes(max_edges: int) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """Outerplanar blocks (cycle length, chords) up to dihedral symmetry, at most ``max_edges`` edges."""
    shapes = []
    for size in range(3, max_edges + 1):
        seen = set()
        for chords in chord_sets(size, max_edges - size):
            key = _dihedral_key(size, chords)
            if key in seen:
                continue
            seen.add(key)
            shapes.append((size, chords))
    return shapes


def _dihedral_key(size, chords):
    best = None
    for r in range(size):
        for flip in (False, True):
            mapped = []
            for a, b in chords:
                a2, b2 = (a + r) % size, (b + r) % size
                if flip:
                    a2, b2 = (-a2) % size, (-b2) % size
                mapped.append((min(a2, b2), max(a2, b2)))
            key = tuple(sorted(mapped))
            if best is None or key < best:
                best = key
    return best


def exhaustive_corpus(max_edges: int = 14, max_blocks: int = 4) -> list[Graph]:
    """Cut-outerplanar graphs built from block shapes glued at vertices, deduplicated up to isomorphism.

    Graphs are grown one block at a time: every shape, glued by every one of its
    vertices to every vertex of every smaller graph.  Deterministic order.
    """
    import networkx as nx

    shapes = block_shapes(max_edges)
    by_hash: dict[str, list[Graph]] = {}
    out: list[Graph] = []

    def add(g: Graph) -> bool:
        nxg = g.to_networkx()
        h = nx.weisfeiler_lehman_graph_hash(nxg, iterations=4)
        bucket = by_hash.setdefault(h, [])
        for other in bucket:
            if nx.is_isomorphic(nxg, other.to_networkx()):
                return False
        bucket.append(g)
        out.append(g)
        return True

    layer = []
    for size, chords in shapes:
        edges = [(i, (i + 1) % size) for i in range(size)] + list(chords)
        g = Graph.from_edges(edges)
        if add(g):
            layer.append(g)
    for _ in range(max_blocks - 1):
        nxt = []
        for base in layer:
            for size, chords in shapes:
                if base.m + size + len(chords) > max_edges:
                    continue
                local = [(i, (i + 1) % size) for i in range(size)] + list(chords)
                for glue_local in range(size):
                    for glue in range(base.vertex_count):
                        mapping = {}
                        fresh = base.vertex_count
                        for i in range(size):
                            if i == glue_local:
                                mapping[i] = glue
                            else:
                                mapping[i] = fresh
                                fresh += 1
                        g = Graph.from_edges(list(base.edges) + [(mapping[a], mapping[b]) for a, b in local])
                        if add(g):
                            nxt.append(g)
        layer = nxt
    return out
