"""Simple undirected graphs, edge-list I/O and the class check for cut-outerplanar inputs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Malformed graph input (parse error, self-loop, duplicate edge)."""


class DisconnectedGraphError(GraphError):
    pass


class ClassRejection(ValueError):
    """The graph is not cut-outerplanar; carries the failing ClassReport."""

    def __init__(self, report: "ClassReport"):
        self.report = report
        super().__init__(report.describe())


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with dense vertex ids and stable edge ids.

    Edge ``i`` is ``edges[i]``; each pair is stored as given in the input.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, default=())
    _index: dict = field(repr=False, default_factory=dict)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None,
                   allow_parallel: bool = False) -> "Graph":
        edges = tuple((int(u), int(v)) for u, v in edges)
        n = 1 + max((max(e) for e in edges), default=-1)
        if vertex_count is None:
            vertex_count = n
        elif vertex_count < n:
            raise GraphError(f"vertex_count {vertex_count} too small for vertex id {n - 1}")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        index: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(edges):
            if u < 0 or v < 0:
                raise GraphError(f"negative vertex id in edge {i}: {u} {v}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u} (edge {i})")
            key = (u, v) if u < v else (v, u)
            if key in index and not allow_parallel:
                raise GraphError(f"duplicate edge {u} {v} (edges {index[key]} and {i})")
            index.setdefault(key, i)
            adj[u].append((v, i))
            adj[v].append((u, i))
        return cls(vertex_count, edges, tuple(tuple(a) for a in adj), index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def edge_id(self, u: int, v: int) -> int:
        """Id of the edge joining ``u`` and ``v``; KeyError if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def active_vertices(self) -> list[int]:
        return [v for v in range(self.vertex_count) if self.adjacency[v]]

    def is_connected(self) -> bool:
        active = self.active_vertices()
        if not active:
            return True
        seen = {active[0]}
        stack = [active[0]]
        while stack:
            v = stack.pop()
            for w, _ in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(active)

    def subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Edge-induced subgraph keeping the original vertex ids (edge ids are renumbered)."""
        return Graph.from_edges([self.edges[i] for i in sorted(edge_ids)], self.vertex_count)

    def relabel(self, perm: list[int]) -> "Graph":
        return Graph.from_edges([(perm[u], perm[v]) for u, v in self.edges], self.vertex_count)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.active_vertices())
        for i, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, id=i)
        return g


def load_graph(text: str) -> Graph:
    """Parse the edge-list format: one ``u v`` pair per line, ``#`` comments, blank lines ignored."""
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex ids, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertex ids must be integers, got {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: vertex ids must be nonnegative")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u, v))
    return Graph.from_edges(edges)


def dump_graph(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    block_of_edge: tuple[int, ...]

    def block_vertices(self, g: Graph, b: int) -> set[int]:
        return {x for e in self.blocks[b] for x in g.edges[e]}


def biconnected_components(g: Graph) -> BlockDecomposition:
    """Blocks (maximal 2-connected edge sets, bridges as singletons) and articulation points.

    Iterative Hopcroft-Tarjan; blocks are ordered by their smallest edge id.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[int] = []
    timer = 0
    for root in g.active_vertices()[:1]:
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frame: (vertex, parent edge id, adjacency iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, pos = stack[-1]
            adj = g.adjacency[v]
            if pos < len(adj):
                stack[-1] = (v, pe, pos + 1)
                w, eid = adj[pos]
                if eid == pe:
                    continue
                if disc[w] == -1:
                    edge_stack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(eid)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    break
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == pe:
                            break
                    blocks.append(frozenset(comp))
                    if u == root:
                        root_children += 1
                    else:
                        cuts.add(u)
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=min)
    block_of_edge = [0] * g.m
    for i, b in enumerate(blocks):
        for e in b:
            block_of_edge[e] = i
    return BlockDecomposition(tuple(blocks), frozenset(cuts), tuple(block_of_edge))


@dataclass
class ClassReport:
    is_simple: bool = True
    is_bridgeless: bool = True
    is_connected: bool = True
    blocks_outerplanar: bool = True
    offending_items: list[tuple[str, list[int]]] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.is_simple and self.is_bridgeless and self.is_connected and self.blocks_outerplanar

    def describe(self) -> str:
        if self.accepted:
            return "cut-outerplanar"
        msgs = []
        for kind, ids in self.offending_items:
            if kind == "bridge":
                msgs.append(f"bridge edge {ids[0]}")
            elif kind == "not_outerplanar":
                msgs.append(f"block with vertices {ids} is not outerplanar")
            elif kind == "disconnected":
                msgs.append("graph is not connected")
            elif kind == "empty":
                msgs.append("graph has no edges")
            else:
                msgs.append(f"{kind} {ids}")
        return "; ".join(msgs)


def validate_class(g: Graph) -> ClassReport:
    """Check that ``g`` is connected, simple, bridgeless and has outerplanar blocks."""
    from .decomposition import NotOuterplanarError, outer_cycle

    report = ClassReport()
    # Graph construction already enforces simplicity.
    if g.m == 0:
        report.is_connected = False
        report.offending_items.append(("empty", []))
        return report
    if not g.is_connected():
        report.is_connected = False
        report.offending_items.append(("disconnected", []))
        return report
    dec = biconnected_components(g)
    for b, block in enumerate(dec.blocks):
        if len(block) == 1:
            report.is_bridgeless = False
            report.offending_items.append(("bridge", sorted(block)))
            continue
        try:
            outer_cycle(g, block)
        except NotOuterplanarError:
            report.blocks_outerplanar = False
            report.offending_items.append(("not_outerplanar", sorted(dec.block_vertices(g, b))))
    return report


def require_accepted(g: Graph) -> None:
    report = validate_class(g)
    if not report.accepted:
        raise ClassRejection(report)
