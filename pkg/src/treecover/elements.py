"""Elements: arcs of outer cycles together with everything hanging below them.

An element is written ``hat(x, y)`` for two vertices of one block's outer cycle:
the block edges with both ends on the directed arc from x to y, plus every block
subtree attached below the block at a vertex of that arc.  ``hat(c)`` (x == y) is
the union of the subtrees attached at the cut vertex c.  The whole graph is an
element too, with coincident end nodes at a chosen vertex of the root block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .decomposition import CPath, Decomposition, decompose
from .graph import Graph, require_accepted


class ElementError(ValueError):
    pass


class Context:
    """Shared structural data of one accepted graph."""

    def __init__(self, g: Graph, dec: Decomposition | None = None, wrapper: int | None = None):
        self.graph = g
        self.dec = dec or decompose(g)
        self.emb = self.dec.embeddings
        self.tree = self.dec.tree
        self.is_chord = self.dec.is_chord
        nb = len(self.emb)
        # chords per vertex per block
        self.chords_at: list[dict[int, list[int]]] = [dict() for _ in range(nb)]
        for b, e in enumerate(self.emb):
            for c in e.chord_edges:
                for x in g.edges[c]:
                    self.chords_at[b].setdefault(x, []).append(c)
        self.kids_at: list[dict[int, list[int]]] = [dict() for _ in range(nb)]
        for b in range(nb):
            for c in self.tree.children[b]:
                self.kids_at[b].setdefault(self.tree.parent_cut[c], []).append(c)
        self.wrapper = self._pick_wrapper() if wrapper is None else wrapper
        self._subtree_cache: dict[int, list[int]] = {}

    def _pick_wrapper(self) -> int:
        r = self.tree.root
        cyc = self.emb[r].outer_cycle
        for v in cyc:
            if self.graph.degree(v) == 2:
                return v
        return cyc[0]

    def subtree_edges(self, b: int) -> list[int]:
        """Edges of block ``b`` and of all blocks below it."""
        out: list[int] = []
        stack = [b]
        while stack:
            x = stack.pop()
            out.extend(self.dec.blocks.blocks[x])
            stack.extend(self.tree.children[x])
        return out

    def whole(self) -> "Element":
        return Element(self, -1, self.wrapper, self.wrapper)


@dataclass(frozen=True, eq=False)
class Element:
    ctx: Context = field(repr=False)
    anchor: int  # block whose cycle carries the end nodes; -1 for the whole graph
    u: int
    v: int

    @property
    def end_nodes(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.anchor, self.u, self.v)

    @cached_property
    def edges(self) -> frozenset[int]:
        ctx = self.ctx
        g = ctx.graph
        if self.anchor == -1:
            return frozenset(range(g.m))
        out: list[int] = []
        if self.u == self.v:
            for c in ctx.kids_at[self.anchor].get(self.u, []):
                out.extend(ctx.subtree_edges(c))
            return frozenset(out)
        emb = ctx.emb[self.anchor]
        arc = emb.arc(self.u, self.v)
        inside = set(arc)
        for e in ctx.dec.blocks.blocks[self.anchor]:
            a, b = g.edges[e]
            if a in inside and b in inside:
                out.append(e)
        for x in arc:
            for c in ctx.kids_at[self.anchor].get(x, []):
                out.extend(ctx.subtree_edges(c))
        return frozenset(out)

    @cached_property
    def vertices(self) -> frozenset[int]:
        g = self.ctx.graph
        return frozenset(x for e in self.edges for x in g.edges[e])

    def as_graph(self) -> Graph:
        return self.ctx.graph.subgraph(self.edges)

    @cached_property
    def subelements(self) -> list["Element"]:
        return _direct_subelements(self)

    @property
    def kind(self) -> str:
        return "composite" if self.subelements else "simple"

    def to_json(self) -> dict:
        g = self.ctx.graph
        return {
            "anchor": self.anchor,
            "end_nodes": [self.u, self.v],
            "edges": [list(g.edges[e]) for e in sorted(self.edges)],
            "kind": self.kind,
            "children": [s.to_json() for s in self.subelements],
        }

    def __repr__(self) -> str:
        return f"Element(anchor={self.anchor}, u={self.u}, v={self.v}, m={len(self.edges)})"


def make_element(ctx: Context, block: int, u: int, v: int) -> Element:
    emb = ctx.emb[block]
    if u not in emb.position or v not in emb.position:
        raise ElementError(f"end nodes must lie on the outer cycle of block {block}")
    if u == v and not ctx.kids_at[block].get(u):
        raise ElementError(f"no subtree attached below block {block} at vertex {u}")
    return Element(ctx, block, u, v)


def whole_element(g: Graph, wrapper: int | None = None) -> Element:
    require_accepted(g)
    return Context(g, wrapper=wrapper).whole()


# --- direct sub-elements --------------------------------------------------------

def _direct_subelements(L: Element) -> list[Element]:
    """Maximal proper sub-elements of ``L`` that avoid its end nodes.

    A candidate hat(x, y) must be joined to the rest of L only through the two
    outer-cycle edges at x and y, and must be bridgeless; hat(c) must hang at a
    cut vertex that carries no chord of its block.  Regions of each block are
    scanned along the cycle; chord spans are laminar intervals, and a run of
    touching top-level spans forms a candidate unless a chord leaves it.
    """
    ctx = L.ctx
    found: list[Element] = []
    # work items: (block, region vertex list)
    work: list[tuple[int, list[int]]] = []

    def descend(block: int, x: int):
        for c in ctx.kids_at[block].get(x, []):
            emb = ctx.emb[c]
            work.append((c, emb.arc(emb.next(x), emb.prev(x))))

    if L.anchor == -1:
        r = ctx.tree.root
        emb = ctx.emb[r]
        w = L.u
        work.append((r, emb.arc(emb.next(w), emb.prev(w))))
        descend(r, w)
    elif L.u == L.v:
        descend(L.anchor, L.u)
    else:
        emb = ctx.emb[L.anchor]
        arc = emb.arc(L.u, L.v)
        if len(arc) > 2:
            work.append((L.anchor, arc[1:-1]))
        descend(L.anchor, L.u)
        descend(L.anchor, L.v)

    while work:
        block, region = work.pop()
        _scan_region(ctx, block, region, found, work, descend)
    found.sort(key=lambda e: (e.anchor, e.u, e.v))
    return found


def _scan_region(ctx: Context, block: int, region: list[int], found, work, descend) -> None:
    g = ctx.graph
    idx = {x: i for i, x in enumerate(region)}
    chords_at = ctx.chords_at[block]
    spans = []
    pinned = set()
    for x in region:
        for c in chords_at.get(x, []):
            y = g.other(c, x)
            if y in idx:
                if idx[x] < idx[y]:
                    spans.append((idx[x], idx[y]))
            else:
                pinned.add(idx[x])
    spans.sort(key=lambda s: (s[0], -s[1]))
    top = []
    for s in spans:
        if top and s[1] <= top[-1][1]:
            continue
        top.append(s)
    covered = [False] * len(region)  # strictly inside or endpoint of a top-level span
    # clusters of touching top-level spans
    i = 0
    while i < len(top):
        j = i
        while j + 1 < len(top) and top[j + 1][0] == top[j][1]:
            j += 1
        lo, hi = top[i][0], top[j][1]
        for p in range(lo, hi + 1):
            covered[p] = True
        if not any(lo <= p <= hi for p in pinned):
            found.append(Element(ctx, block, region[lo], region[hi]))
        else:
            ends = set()
            for a, b in top[i:j + 1]:
                if b - a > 1:
                    work.append((block, region[a + 1:b]))
                ends.update((a, b))
            for p in sorted(ends):
                descend(block, region[p])
        i = j + 1
    for p, x in enumerate(region):
        if covered[p]:
            continue
        if not ctx.kids_at[block].get(x):
            continue
        if p in pinned:
            descend(block, x)
        else:
            found.append(Element(ctx, block, x, x))


def direct_subelements(L: Element) -> list[Element]:
    return list(L.subelements)


# --- contraction --------------------------------------------------------------

@dataclass
class Residual:
    """Simple element left after contracting every direct sub-element to a node.

    ``graph`` uses compact local vertex ids; ``labels`` maps them back to host
    vertices, with None for contraction nodes.  It may contain one pair of
    parallel edges (a 2-cycle) when a sub-element covers all but one vertex of
    a cycle.
    """

    graph: Graph
    end_nodes: tuple[int, int]  # local ids
    contraction_nodes: dict[int, int]  # sub-element index -> local vertex id
    origin: list[int]  # residual edge id -> host edge id
    labels: list[int | None]

    def as_graph(self) -> Graph:
        return self.graph

    def chord_count(self) -> int:
        g = self.graph
        v = len(g.active_vertices())
        return g.m - v  # cyclomatic number minus one

    def label(self, x: int) -> str:
        host = self.labels[x]
        if host is not None:
            return str(host)
        i = next(i for i, y in self.contraction_nodes.items() if y == x)
        return f"m{i}"


def contract(L: Element, subs: list[Element] | None = None) -> Residual:
    """Replace each sub-element by a fresh degree-2 node joined to its two attachment edges."""
    subs = L.subelements if subs is None else subs
    g = L.ctx.graph
    owner: dict[int, int] = {}
    inner: set[int] = set()
    labels: list[int | None] = []
    nodes = {}
    for i, M in enumerate(subs):
        nodes[i] = len(labels)
        labels.append(None)
        for x in M.vertices:
            owner[x] = nodes[i]
        inner |= M.edges
    local: dict[int, int] = {}

    def to_local(x):
        if x in owner:
            return owner[x]
        if x not in local:
            local[x] = len(labels)
            labels.append(x)
        return local[x]

    edges, origin = [], []
    for e in sorted(L.edges - inner):
        a, b = g.edges[e]
        edges.append((to_local(a), to_local(b)))
        origin.append(e)
    ends = (to_local(L.u), to_local(L.v))
    rg = Graph.from_edges(edges, len(labels), allow_parallel=True)
    for i, x in nodes.items():
        if rg.degree(x) != 2:
            raise ElementError(f"contraction node of sub-element {i} has degree {rg.degree(x)}")
    return Residual(rg, ends, nodes, origin, labels)


# --- chords and fitness paths ---------------------------------------------------

def _block_of_chord(L: Element, chord: int) -> int:
    ctx = L.ctx
    if chord not in L.edges or not ctx.is_chord[chord]:
        raise ElementError(f"edge {chord} is not a chord of the element")
    return ctx.dec.blocks.block_of_edge[chord]


def _span(L: Element, chord: int) -> tuple[int, set[int]]:
    """Vertices of the arc under a chord, on the side away from the element's end nodes."""
    ctx = L.ctx
    g = ctx.graph
    b = _block_of_chord(L, chord)
    emb = ctx.emb[b]
    x, y = g.edges[chord]
    forward = emb.arc(x, y)
    backward = emb.arc(y, x)
    # the side containing neither an end node nor the block's parent attachment is the inside
    outside = {L.u, L.v}
    if ctx.tree.parent_cut[b] != -1:
        outside.add(ctx.tree.parent_cut[b])
    if L.anchor == b and L.u != L.v:
        arc = set(emb.arc(L.u, L.v))
        outside |= set(emb.outer_cycle) - arc
    f_bad = any(z in outside for z in forward[1:-1])
    return b, set(backward if f_bad else forward)


def sub_edges(L: Element, chord: int) -> list[int]:
    g = L.ctx.graph
    b, span = _span(L, chord)
    out = []
    for c in L.ctx.emb[b].chord_edges:
        if c == chord or c not in L.edges:
            continue
        x, y = g.edges[c]
        if x in span and y in span:
            out.append(c)
    return out


def chord_level(L: Element, chord: int) -> int:
    subs = sub_edges(L, chord)
    if not subs:
        return 0
    return 1 + max(chord_level(L, c) for c in subs)


def indifferent_set(L: Element, chord: int) -> list[int]:
    if chord_level(L, chord) != 1:
        raise ElementError("indifferent sets are defined under level-1 chords only")
    return sorted(sub_edges(L, chord))


@dataclass(frozen=True)
class FitnessPath:
    center: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    closed: bool = False


def fitness_path(g: Graph, x: int) -> FitnessPath:
    """Maximal path through ``x`` whose inner vertices all have degree 2 in ``g``."""
    if g.degree(x) != 2:
        raise ElementError(f"vertex {x} does not have degree 2")
    (a, ea), (b, eb) = g.adjacency[x]
    left_v, left_e = _walk(g, x, a, ea)
    if left_v[-1] == x:
        # went all the way round: the component is a bare cycle
        return FitnessPath(x, tuple([x] + left_v), tuple(left_e), True)
    right_v, right_e = _walk(g, x, b, eb)
    verts = tuple(list(reversed(left_v)) + [x] + right_v)
    edges = tuple(list(reversed(left_e)) + right_e)
    return FitnessPath(x, verts, edges, False)


def _walk(g: Graph, start: int, nxt: int, e: int) -> tuple[list[int], list[int]]:
    verts, edges = [nxt], [e]
    prev_e, cur = e, nxt
    while cur != start and g.degree(cur) == 2:
        (p, ep), (q, eq) = g.adjacency[cur]
        w, ew = (q, eq) if ep == prev_e else (p, ep)
        verts.append(w)
        edges.append(ew)
        prev_e, cur = ew, w
    return verts, edges


def element_fitness_path(L: Element, x: int) -> FitnessPath:
    return fitness_path(L.as_graph(), x)


def c_path_of(L: Element, block: int, u: int, v: int) -> CPath:
    from .decomposition import c_path

    return c_path(L.ctx.emb[block], u, v)
