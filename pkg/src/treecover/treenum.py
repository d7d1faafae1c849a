"""Tree numbers, proper covers, fitness and witness covers of cut-outerplanar graphs.

Elements are solved bottom-up.  The direct sub-elements of an element are
contracted to single nodes and the residual is optimised exactly by
``reduction``; each contraction node is priced from its child's Profile, which
records how minimal covers of the child can meet its two end nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .covers import InvariantError, TreeCover, cover_problems
from .elements import Context, Element, Residual, contract, fitness_path
from .graph import Graph, require_accepted
from .reduction import A, B, C, S, Event, Tokens, realize, reduce_graph


@dataclass(frozen=True)
class Profile:
    """How minimal covers of an element can meet its end nodes u and v."""

    tau: int
    proper: bool  # distinct trees at u and v
    shared: bool  # one tree holds both u and v
    disjoint: bool  # vertex-disjoint trees at u and v
    avoid_u: bool  # a tree at u that misses v
    avoid_v: bool  # a tree at v that misses u
    point: bool = False  # u == v

    def event(self) -> Event:
        """Extra trees this element adds when contracted to one node of a residual."""
        t = self.tau
        cut = None
        if not self.point:
            if self.disjoint:
                cut = t - 2
            elif self.avoid_u or self.avoid_v:
                cut = t - 1
            else:
                cut = t
        return Event(t - 2 if self.proper else t - 1, t - 1 if self.shared else None, cut)


_WANTS_TWO = {
    "any": lambda s: True,
    "proper": lambda s: not (s[C] == 1 and s[A] == s[B] == s[S] == 0),
    "shared": lambda s: s[C] >= 1,
    "avoid_u": lambda s: s[A] >= 1 or s[S] >= 1,
    "avoid_v": lambda s: s[B] >= 1 or s[S] >= 1,
}


def _scaled(ev: Event, unit: int, cut_weight: int, proper: bool) -> Event:
    # a child that is not fit with a proper cover costs 1 extra; a cut child more
    return Event(ev.fit * unit + (0 if proper else 1),
                 None if ev.through is None else ev.through * unit + 1,
                 None if ev.cut is None else ev.cut * unit + cut_weight + 1)


class _Solver:
    """Exact optimisation of one residual with priced contraction nodes.

    Costs are integers ordered lexicographically: trees in the cover first,
    then cut children, then residual trees, then children that are not fit
    with a proper cover.  Reports therefore follow the usual recurrence
    whenever some minimal cover does.
    """

    def __init__(self, graph: Graph, ends: tuple[int, int], events: dict[int, Event],
                 proper: dict[int, bool] | None = None):
        proper = proper or {}
        n = len(events)
        tree_weight = n + 1
        cut_weight = tree_weight * (graph.m + 3)
        self.unit = unit = cut_weight * (n + 1)
        self.tree_cost = unit + tree_weight
        self.graph = graph
        self.ends = ends
        self.events = {x: _scaled(ev, unit, cut_weight, proper.get(x, False))
                       for x, ev in events.items()}
        self.vertices = graph.active_vertices()
        u, v = ends
        self.point = u == v
        terms = [u] if self.point else [u, v]
        self.root = reduce_graph(self.vertices, list(graph.edges), terms, self.events, self.tree_cost)
        self.tau = min(self._total(s, c) for s, (c, _) in self.root.table.items()) // unit
        self._gadget = None

    def _total(self, state, cost):
        # an S image left open at the end nodes is two trees
        return cost + state[S] * self.tree_cost

    def min_states(self):
        """Minimal states, best tie-break first."""
        found = sorted((self._total(s, c), s) for s, (c, _) in self.root.table.items())
        return [s for t, s in found if t // self.unit == self.tau]

    @property
    def gadget(self):
        """Root of the residual plus a path u-z-v, solved with u as the only terminal."""
        if self._gadget is None:
            u, v = self.ends
            z = self.graph.vertex_count
            edges = list(self.graph.edges) + [(u, z), (z, v)]
            self._gadget = reduce_graph(self.vertices + [z], edges, [u], self.events, self.tree_cost)
        return self._gadget

    def _gadget_tau(self) -> int:
        return self.gadget.best() // self.unit

    def profile(self) -> Profile:
        mins = self.min_states()
        if self.point:
            return Profile(self.tau, any(s[A] >= 2 for s in mins), True, False, False, False, True)
        return Profile(
            self.tau,
            any(_WANTS_TWO["proper"](s) for s in mins),
            any(_WANTS_TWO["shared"](s) for s in mins),
            self._gadget_tau() == self.tau - 1,
            any(_WANTS_TWO["avoid_u"](s) for s in mins),
            any(_WANTS_TWO["avoid_v"](s) for s in mins),
        )

    def pick(self, want: str):
        """(root, state) of a minimal solution meeting ``want``, or None."""
        if want == "disjoint":
            g = self.gadget
            if self._gadget_tau() != self.tau - 1:
                return None
            return g, min(g.table, key=lambda s: (g.table[s][0], s))
        for s in self.min_states():
            if self.point:
                if want in ("any", "shared") or (want == "proper" and s[A] >= 2):
                    return self.root, s
            elif _WANTS_TWO[want](s):
                return self.root, s
        return None

    def realize(self, want: str = "any"):
        """Images of one minimal solution: (edge classes, kind per contraction node)."""
        picked = self.pick(want)
        if picked is None:
            raise InvariantError(f"no minimal solution with property {want!r}")
        root, state = picked
        tokens = Tokens()
        events_out: list = []
        realize(root, state, tokens, events_out)
        kinds = {node: kind for node, kind, _, _ in events_out}
        return list(tokens.classes().values()), kinds


@dataclass
class ResidualSummary:
    chord_count: int
    fitness_paths: dict[int, tuple[str, ...]]  # child index -> path through its contraction node

    def to_json(self) -> dict:
        return {
            "chord_count": self.chord_count,
            "fitness_paths": {str(k): list(v) for k, v in sorted(self.fitness_paths.items())},
        }


@dataclass
class ElementReport:
    """Result of analysing one element, mirroring the element tree.

    ``modes[i]`` says how child i sits in one minimal cover: "fit" (its two
    attachment edges in different trees), "through" (one tree crosses it) or
    "cut" (one tree reaches both sides without crossing it).  ``I`` lists the
    fit children with proper covers.  For the usual shape of two residual trees
    and no cut children, tau = 2 + sum(child tau) - n - |I|; ``correction`` is
    the difference from that formula otherwise.
    """

    element: Element = field(repr=False)
    tau: int
    proper_exists: bool
    n: int
    I: tuple[int, ...]
    children: list["ElementReport"]
    residual: ResidualSummary
    profile: Profile
    modes: tuple[str, ...]
    residual_trees: int
    solver: _Solver = field(repr=False, compare=False, default=None)
    residual_data: Residual = field(repr=False, compare=False, default=None)

    @property
    def recurrence_tau(self) -> int:
        return 2 + sum(c.tau for c in self.children) - self.n - len(self.I)

    @property
    def correction(self) -> int:
        return self.tau - self.recurrence_tau

    def to_json(self) -> dict:
        L = self.element
        p = self.profile
        return {
            "end_nodes": [L.u, L.v],
            "anchor": L.anchor,
            "edge_count": len(L.edges),
            "tau": self.tau,
            "proper_exists": self.proper_exists,
            "n": self.n,
            "I": list(self.I),
            "modes": list(self.modes),
            "residual_trees": self.residual_trees,
            "correction": self.correction,
            "flags": {"shared": p.shared, "disjoint": p.disjoint,
                      "avoid_u": p.avoid_u, "avoid_v": p.avoid_v},
            "residual": self.residual.to_json(),
            "children": [c.to_json() for c in self.children],
        }


def _report(L: Element, kids: list[ElementReport]) -> ElementReport:
    res = contract(L)
    rg = res.graph
    nodes = res.contraction_nodes
    events = {nodes[i]: k.profile.event() for i, k in enumerate(kids)}
    proper = {nodes[i]: k.proper_exists for i, k in enumerate(kids)}
    solver = _Solver(rg, res.end_nodes, events, proper)
    prof = solver.profile()
    _, kinds = solver.realize()
    modes = tuple(kinds[nodes[i]] for i in range(len(kids)))
    spent = 0
    for i, k in enumerate(kids):
        ev = events[nodes[i]]
        spent += getattr(ev, modes[i])
    chosen = [i for i, k in enumerate(kids) if modes[i] == "fit" and k.profile.proper]
    paths = {i: tuple(res.label(x) for x in fitness_path(rg, nodes[i]).vertices) for i in range(len(kids))}
    summary = ResidualSummary(rg.m - len(rg.active_vertices()), paths)
    return ElementReport(L, solver.tau, prof.proper, len(kids), tuple(chosen), kids, summary,
                         prof, modes, solver.tau - spent, solver, res)


def _post_order(L: Element) -> list[Element]:
    order, stack = [], [L]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(x.subelements)
    order.reverse()
    return order


def analyze(L: Element) -> ElementReport:
    """Report for ``L`` and, recursively, all its sub-elements."""
    done: dict[int, ElementReport] = {}
    for M in _post_order(L):
        kids = [done.pop(id(c)) for c in M.subelements]
        done[id(M)] = _report(M, kids)
    return done[id(L)]


def tree_number_element(L: Element) -> ElementReport:
    return analyze(L)


def _whole(g: Graph) -> Element:
    require_accepted(g)
    return Context(g).whole()


def tree_number(g: Graph) -> int:
    """Minimum number of trees partitioning the edges of an accepted graph."""
    return analyze(_whole(g)).tau


def proper_cover_exists(L: Element) -> bool:
    return analyze(L).proper_exists


def arboricity_class(g: Graph) -> int:
    """1 for a forest, else 2 (cut-outerplanar graphs have arboricity at most 2)."""
    from .graph import biconnected_components

    if g.m == 0:
        return 0
    dec = biconnected_components(g)
    return 1 if all(len(b) == 1 for b in dec.blocks) else 2


# --- fitness ------------------------------------------------------------------

def _graph_of(obj) -> Graph:
    if isinstance(obj, Graph):
        return obj
    return obj.as_graph()


def _split_costs(g: Graph, events: dict[int, Event], x: int) -> tuple[int, int]:
    """Best cost with x free, and best cost with x split between two trees."""
    verts = list(g.active_vertices())
    edges = list(g.edges)
    term = next((v for v in verts if v != x and v not in events), None)
    if term is None:
        # subdivide an edge for a plain terminal; minimum covers are unchanged
        term = g.vertex_count
        a, b = edges[0]
        edges[0] = (a, term)
        edges.append((term, b))
        verts.append(term)
    free = reduce_graph(verts, edges, [term], {**events, x: Event(0, 0, None)}).best()
    split = reduce_graph(verts, edges, [term], {**events, x: Event(0, 1, None)}).best()
    return free, split


def is_fit(obj, x: int) -> bool:
    """Some minimal tree cover of ``obj`` puts the degree-2 node ``x`` in two trees."""
    g = _graph_of(obj)
    if g.degree(x) != 2:
        raise ValueError(f"vertex {x} does not have degree 2")
    events: dict[int, Event] = {}
    if isinstance(obj, Element) and obj.subelements:
        inner = set().union(*(M.vertices for M in obj.subelements))
        if x not in inner:
            rep = analyze(obj)
            data = rep.residual_data
            g = data.graph
            x = data.labels.index(x)
            nodes = data.contraction_nodes
            events = {nodes[i]: k.profile.event() for i, k in enumerate(rep.children)}
    free, split = _split_costs(g, events, x)
    return free == split


def _is_bare_cycle(g: Graph) -> bool:
    return all(g.degree(v) == 2 for v in g.active_vertices())


def max_fit_subset(residual, candidates, rule: str = "threads") -> list[int]:
    """Largest set of candidate nodes that one minimal cover splits simultaneously.

    Unfit candidates are dropped first.  Fit nodes sharing a fitness path can
    not be split together, so one node per path is kept (the smallest id), and
    a residual that is a bare cycle allows two.  ``rule="literal"`` reproduces
    the older procedure: a single node on a bare cycle, and two nodes from one
    path when the residual has exactly one chord.
    """
    g = _graph_of(residual)
    fit = [x for x in sorted(candidates) if is_fit(g, x)]
    if not fit:
        return []
    if _is_bare_cycle(g):
        return fit[:1] if rule == "literal" else fit[:2]
    groups: dict[frozenset, int] = {}
    for x in fit:
        groups.setdefault(frozenset(fitness_path(g, x).edges), x)
    chords = g.m - len(g.active_vertices())
    if rule == "literal" and chords == 1 and len(groups) == 1 and len(fit) >= 2:
        return fit[:2]
    return sorted(groups.values())


def recurrence_tau(L: Element, rule: str = "threads") -> int:
    """tau from 2 + sum(child tau) - n - |I| alone, with I from ``max_fit_subset``."""
    done: dict[int, int] = {}
    for M in _post_order(L):
        subs = M.subelements
        if not subs:
            done[id(M)] = 2
            continue
        res = contract(M)
        taus = [done.pop(id(c)) for c in subs]
        cands = [res.contraction_nodes[i] for i, c in enumerate(subs) if _proper_child(c)]
        chosen = max_fit_subset(res.graph, cands, rule)
        done[id(M)] = 2 + sum(taus) - len(subs) - len(chosen)
    return done[id(L)]


def _proper_child(M: Element) -> bool:
    return analyze(M).proper_exists


def step4_literal_tau(g: Graph) -> int:
    return recurrence_tau(_whole(g), rule="literal")


# --- witness covers -----------------------------------------------------------

class _Forest:
    """Union-find over partial trees, each holding host edge ids."""

    def __init__(self):
        self.parent: list[int] = []
        self.edges: list[list[int]] = []

    def add(self, edges) -> int:
        self.parent.append(len(self.parent))
        self.edges.append(list(edges))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        par = self.parent
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def parts(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, es in enumerate(self.edges):
            out.setdefault(self.find(i), []).extend(es)
        return [sorted(p) for p in out.values() if p]


def _split_images(rg: Graph, classes, kinds, drop: int):
    """Connected pieces of every image; contraction nodes in state cut count once per edge."""
    cut = {x for x, k in kinds.items() if k == "cut"}
    pieces = []
    for cls in classes:
        parent: dict = {}

        def find(a):
            while parent.setdefault(a, a) != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        kept = [e for e in cls if e < drop]
        for e in kept:
            a, b = rg.edges[e]
            ka = (a, e) if a in cut else a
            kb = (b, e) if b in cut else b
            parent[find(ka)] = find(kb)
        comps: dict = {}
        for e in kept:
            a, b = rg.edges[e]
            comps.setdefault(find((a, e) if a in cut else a), []).append(e)
        pieces.append(list(comps.values()))
    return pieces


def _build(rep: ElementReport, want: str, forest: _Forest):
    """Realise ``rep`` meeting ``want``; returns (trees by role, child tasks)."""
    L = rep.element
    res = rep.residual_data
    rg = res.graph
    solver = rep.solver
    u, v = res.end_nodes
    classes, kinds = solver.realize(want)
    pieces = _split_images(rg, classes, kinds, rg.m)
    rec_of_edge: dict[int, int] = {}
    records = []  # (record id, vertex set)
    gadget_parts: list[int] = []
    for cls, comps in zip(classes, pieces):
        for comp in comps:
            rid = forest.add(res.origin[e] for e in comp)
            verts = {x for e in comp for x in rg.edges[e]}
            records.append((rid, verts))
            for e in comp:
                rec_of_edge[e] = rid
            if any(e >= rg.m for e in cls):
                gadget_parts.append((rid, verts))
    roles = _designate(want, records, gadget_parts, u, v)
    g = L.ctx.graph
    tasks = []
    nodes = res.contraction_nodes
    for i, kid in enumerate(rep.children):
        x = nodes[i]
        M = kid.element
        (_, e0), (_, e1) = rg.adjacency[x]
        if M.u not in g.edges[res.origin[e0]]:
            e0, e1 = e1, e0
        ru, rv = rec_of_edge[e0], rec_of_edge[e1]
        kind = kinds[x]
        p = kid.profile
        if kind == "fit":
            if p.proper:
                tasks.append((kid, "proper", [("u", ru), ("v", rv)]))
            else:
                tasks.append((kid, "any", [("u", ru)]))
        elif kind == "through":
            tasks.append((kid, "shared", [("u", ru)]))
        elif p.disjoint:
            tasks.append((kid, "disjoint", [("u", ru), ("v", rv)]))
        elif p.avoid_u:
            tasks.append((kid, "avoid_u", [("u", ru)]))
        elif p.avoid_v:
            tasks.append((kid, "avoid_v", [("v", rv)]))
        else:
            tasks.append((kid, "any", []))
    return roles, tasks


def _designate(want, records, gadget_parts, u, v) -> dict[str, int]:
    at_u = [r for r, vs in records if u in vs]
    at_v = [r for r, vs in records if v in vs]
    if want == "disjoint":
        ru = next(r for r, vs in gadget_parts if u in vs)
        rv = next(r for r, vs in gadget_parts if v in vs)
        return {"u": ru, "v": rv}
    if want == "proper":
        ru, rv = next((a, b) for a in at_u for b in at_v if a != b)
        return {"u": ru, "v": rv}
    if want == "shared":
        r = next(r for r in at_u if r in at_v)
        return {"u": r, "v": r}
    if want == "avoid_u":
        return {"u": next(r for r in at_u if r not in at_v)}
    if want == "avoid_v":
        return {"v": next(r for r in at_v if r not in at_u)}
    return {"u": at_u[0], "v": at_v[0]}


def construct_cover(obj, proper: bool = False, report: ElementReport | None = None) -> TreeCover:
    """A validated minimal tree cover; with ``proper`` the end nodes get distinct trees."""
    L = _whole(obj) if isinstance(obj, Graph) else obj
    rep = report or analyze(L)
    if proper and not rep.proper_exists:
        raise ValueError("element has no proper minimal cover")
    forest = _Forest()
    stack = [(rep, "proper" if proper else "any", [])]
    while stack:
        r, want, merges = stack.pop()
        roles, tasks = _build(r, want, forest)
        for role, target in merges:
            forest.union(roles[role], target)
        stack.extend(tasks)
    g = L.ctx.graph
    parts = forest.parts()
    cover = TreeCover.from_parts(parts, L.edges, L.end_nodes)
    problems = cover_problems(g, cover.parts, cover.edge_set)
    if problems:
        raise InvariantError("witness cover is invalid: " + "; ".join(problems[:3]))
    if len(cover) != rep.tau:
        raise InvariantError(f"witness has {len(cover)} trees, expected {rep.tau}")
    if proper and not cover.is_proper(g):
        raise InvariantError("witness cover is not proper")
    return cover
