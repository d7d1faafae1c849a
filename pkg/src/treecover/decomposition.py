"""Outer cycles of outerplanar blocks and the rooted block-cut tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import BlockDecomposition, Graph, biconnected_components


class NotOuterplanarError(ValueError):
    pass


@dataclass(frozen=True)
class OuterEmbedding:
    block: int
    outer_cycle: tuple[int, ...]
    cycle_edges: tuple[int, ...]
    chord_edges: tuple[int, ...]
    position: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if not self.position:
            self.position.update({v: i for i, v in enumerate(self.outer_cycle)})

    @property
    def size(self) -> int:
        return len(self.outer_cycle)

    def next(self, v: int) -> int:
        return self.outer_cycle[(self.position[v] + 1) % self.size]

    def prev(self, v: int) -> int:
        return self.outer_cycle[(self.position[v] - 1) % self.size]

    def arc(self, u: int, v: int) -> list[int]:
        """Vertices from ``u`` to ``v`` following the cycle direction (``[u]`` when u == v)."""
        i, j = self.position[u], self.position[v]
        k = len(self.outer_cycle)
        n = (j - i) % k
        return [self.outer_cycle[(i + t) % k] for t in range(n + 1)]


@dataclass(frozen=True)
class CPath:
    block: int
    u: int
    v: int
    vertices: tuple[int, ...]


def outer_cycle(g: Graph, block: Iterable[int], block_index: int = 0) -> OuterEmbedding:
    """Hamiltonian outer cycle and chords of a 2-connected outerplanar block.

    Works by repeatedly suppressing degree-2 vertices: the suppressed vertex's two
    edges merge into one path edge, and a real edge parallel to the merged path is
    recorded as a chord.  The result is re-verified (Hamiltonian, non-crossing).
    """
    block = sorted(block)
    verts = sorted({x for e in block for x in g.edges[e]})
    if len(verts) < 3:
        raise NotOuterplanarError("block has fewer than 3 vertices")
    # cur[v][w] = vertex path from v to w standing for one current edge
    cur: dict[int, dict[int, tuple[int, ...]]] = {v: {} for v in verts}
    for e in block:
        a, b = g.edges[e]
        cur[a][b] = (a, b)
        cur[b][a] = (b, a)
    chords: list[tuple[int, int]] = []
    alive = len(verts)
    queue = deque(v for v in verts if len(cur[v]) == 2)
    cycle: list[int] | None = None
    while alive > 3:
        while queue and (queue[0] not in cur or len(cur[queue[0]]) != 2):
            queue.popleft()
        if not queue:
            raise NotOuterplanarError("no degree-2 vertex left to suppress")
        v = queue.popleft()
        (a, pa), (b, pb) = cur[v].items()
        merged = tuple(reversed(pa)) + pb[1:]  # a ... v ... b
        del cur[v]
        del cur[a][v]
        del cur[b][v]
        alive -= 1
        if b in cur[a]:
            q = cur[a][b]
            if len(q) != 2:
                raise NotOuterplanarError("two parallel outer paths between a pair of vertices")
            chords.append((a, b))
        cur[a][b] = merged
        cur[b][a] = tuple(reversed(merged))
        for w in (a, b):
            if len(cur[w]) == 2:
                queue.append(w)
            elif len(cur[w]) < 2:
                raise NotOuterplanarError("block is not 2-connected")
    rest = list(cur)
    x, y, z = rest
    if not (y in cur[x] and z in cur[y] and x in cur[z]):
        raise NotOuterplanarError("reduced block is not a triangle")
    cycle = list(cur[x][y]) + list(cur[y][z][1:]) + list(cur[z][x][1:-1])
    if sorted(cycle) != verts:
        raise NotOuterplanarError("outer walk is not Hamiltonian")
    # fix direction: start at the smallest vertex, step toward its smaller cycle neighbour
    s = cycle.index(verts[0])
    cycle = cycle[s:] + cycle[:s]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    cycle_edges = []
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if not g.has_edge(a, b):
            raise NotOuterplanarError("outer cycle uses a missing edge")
        cycle_edges.append(g.edge_id(a, b))
    on_cycle = set(cycle_edges)
    chord_ids = sorted(e for e in block if e not in on_cycle)
    if len(chord_ids) + len(cycle_edges) != len(block):
        raise NotOuterplanarError("edge accounting mismatch")
    spans = []
    for e in chord_ids:
        a, b = sorted((pos[g.edges[e][0]], pos[g.edges[e][1]]))
        spans.append((a, b))
    if has_crossing(spans):
        raise NotOuterplanarError("chords cross")
    return OuterEmbedding(block_index, tuple(cycle), tuple(cycle_edges), tuple(chord_ids))


def has_crossing(spans: list[tuple[int, int]]) -> bool:
    """True if two chords given as sorted position pairs interleave."""
    stack: list[int] = []
    # laminar check over intervals sorted by (left asc, right desc)
    spans = sorted(spans, key=lambda s: (s[0], -s[1]))
    for a, b in spans:
        while stack and stack[-1] <= a:
            stack.pop()
        if stack and b > stack[-1]:
            return True
        stack.append(b)
    return False


@dataclass(frozen=True)
class BlockCutTree:
    root: int
    parent: tuple[int, ...]  # parent block, -1 for root
    parent_cut: tuple[int, ...]  # cut vertex shared with parent, -1 for root
    children: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int, int], ...]  # (parent, child, cut vertex)
    tin: tuple[int, ...] = field(repr=False)
    tout: tuple[int, ...] = field(repr=False)

    @property
    def nodes(self) -> range:
        return range(len(self.parent))

    def precedes(self, i: int, j: int) -> bool:
        """``G_i < G_j``: block ``i`` is a proper ancestor of block ``j``."""
        return i != j and self.tin[i] <= self.tin[j] and self.tout[j] <= self.tout[i]

    def children_at(self, b: int, v: int) -> list[int]:
        return [c for c in self.children[b] if self.parent_cut[c] == v]


def build_block_cut_tree(g: Graph, blocks: BlockDecomposition, root_choice: int | None = None) -> BlockCutTree:
    nb = len(blocks.blocks)
    members: dict[int, list[int]] = {}
    bverts = []
    for b in range(nb):
        vs = sorted(blocks.block_vertices(g, b))
        bverts.append(vs)
        for v in vs:
            members.setdefault(v, []).append(b)
    if root_choice is None:
        v0 = min(members)
        root_choice = min(members[v0])
    parent = [-1] * nb
    parent_cut = [-1] * nb
    children: list[list[int]] = [[] for _ in range(nb)]
    tree_edges = []
    seen = {root_choice}
    order = deque([root_choice])
    while order:
        b = order.popleft()
        for v in bverts[b]:
            for c in members[v]:
                if c not in seen:
                    seen.add(c)
                    parent[c] = b
                    parent_cut[c] = v
                    children[b].append(c)
                    tree_edges.append((b, c, v))
                    order.append(c)
    tin = [0] * nb
    tout = [0] * nb
    clock = 0
    stack = [(root_choice, 0)]
    while stack:
        b, i = stack.pop()
        if i == 0:
            tin[b] = clock
            clock += 1
        if i < len(children[b]):
            stack.append((b, i + 1))
            stack.append((children[b][i], 0))
        else:
            tout[b] = clock
            clock += 1
    return BlockCutTree(
        root_choice,
        tuple(parent),
        tuple(parent_cut),
        tuple(tuple(c) for c in children),
        tuple(tree_edges),
        tuple(tin),
        tuple(tout),
    )


def c_path(emb: OuterEmbedding, u: int, v: int) -> CPath:
    if u not in emb.position or v not in emb.position:
        raise KeyError(f"vertex not on outer cycle of block {emb.block}")
    return CPath(emb.block, u, v, tuple(emb.arc(u, v)))


@dataclass
class Decomposition:
    """Everything structural about an accepted graph, computed once."""

    graph: Graph
    blocks: BlockDecomposition
    embeddings: list[OuterEmbedding]
    tree: BlockCutTree
    is_chord: list[bool]

    def to_json(self) -> dict:
        g = self.graph
        return {
            "schema": 1,
            "blocks": [sorted(b) for b in self.blocks.blocks],
            "cut_vertices": sorted(self.blocks.cut_vertices),
            "outer_cycles": [list(e.outer_cycle) for e in self.embeddings],
            "chords": [[sorted(g.edges[c]) for c in e.chord_edges] for e in self.embeddings],
            "tree_edges": [list(t) for t in self.tree.tree_edges],
            "root": self.tree.root,
        }


def decompose(g: Graph, root_choice: int | None = None) -> Decomposition:
    """Block decomposition, per-block outer embeddings and block-cut tree of an accepted graph."""
    blocks = biconnected_components(g)
    embs = []
    for b, block in enumerate(blocks.blocks):
        if len(block) < 3:
            raise NotOuterplanarError(f"block {b} is a bridge")
        embs.append(outer_cycle(g, block, b))
    tree = build_block_cut_tree(g, blocks, root_choice)
    is_chord = [False] * g.m
    for e in embs:
        for c in e.chord_edges:
            is_chord[c] = True
    return Decomposition(g, blocks, embs, tree, is_chord)
