"""Exact tree-cover optimisation on a residual by series-parallel reduction.

A residual is a small cut-outerplanar multigraph whose contraction nodes stand
for already-solved sub-elements.  Every edge starts as a two-terminal *piece*;
pieces are merged in parallel, in series through a vertex, or folded onto a
neighbour when a vertex becomes pendant.  A piece's table maps a state to the
cheapest way of reaching it.  The state counts the partial trees ("images")
that are still open at the piece's terminals ``a`` and ``b``:

    A  touches a only            B  touches b only
    C  touches both, connected   S  touches both, in two parts

An S image is one tree whose two parts must be joined outside the piece.  Cost
counts images created minus identifications, plus the extra trees contributed
by contracted sub-elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

A, B, C, S = 0, 1, 2, 3
TYPE_NAMES = "ABCS"
CLOSED = -1
MAX_OPEN = 4  # open images tracked per piece

_PAR = {A: ("a",), B: ("b",), C: ("ab",), S: ("a", "b")}
_SER_LEFT = {A: ("a",), B: ("c",), C: ("ac",), S: ("a", "c")}
_SER_RIGHT = {A: ("c",), B: ("b",), C: ("cb",), S: ("c", "b")}
# a cut keeps the two sides of a contraction node apart: they close as c and d
_CUT_LEFT = _SER_LEFT
_CUT_RIGHT = {A: ("d",), B: ("b",), C: ("bd",), S: ("d", "b")}
_TYPE_OF = {("a",): A, ("b",): B, ("ab",): C, ("a", "b"): S}


def _join(comps: list[str], closing: str = "") -> int | None:
    """Type of the image formed by the given components, or None if it has a cycle.

    Each component is a tree given by the terminals it touches; components meet
    only at terminals.  ``closing`` terminals are dropped from the result.
    """
    parent = list(range(len(comps)))
    owner: dict[str, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, comp in enumerate(comps):
        for t in comp:
            if t in owner:
                r1, r2 = find(owner[t]), find(i)
                if r1 == r2:
                    return None
                parent[r1] = r2
            else:
                owner[t] = i
    groups: dict[int, set[str]] = {}
    for i, comp in enumerate(comps):
        groups.setdefault(find(i), set()).update(comp)
    parts = []
    for terms in groups.values():
        left = "".join(sorted(t for t in terms if t not in closing))
        parts.append(left)
    if any(not p for p in parts):
        return CLOSED if len(parts) == 1 else None
    return _TYPE_OF.get(tuple(sorted(parts)))


def _rules(kind: str):
    left, right, closing = {
        "par": (_PAR, _PAR, ""),
        "ser": (_SER_LEFT, _SER_RIGHT, "c"),
        "cut": (_CUT_LEFT, _CUT_RIGHT, "cd"),
    }[kind]
    pair = [[_join(list(left[t1]) + list(right[t2]), closing) for t2 in range(4)] for t1 in range(4)]
    solo1 = [_join(list(left[t]), closing) for t in range(4)]
    solo2 = [_join(list(right[t]), closing) for t in range(4)]
    return pair, solo1, solo2


_RULES = {k: _rules(k) for k in ("par", "ser", "cut")}


@lru_cache(maxsize=None)
def moves(kind: str, s1: tuple, s2: tuple) -> tuple:
    """All results of identifying images of two pieces.

    Returns tuples (state, delta, match) where match lists ((t1, t2), count)
    identifications and delta = -(number of identifications).
    """
    pair, solo1, solo2 = _RULES[kind]
    pairs = [(t1, t2) for t1 in range(4) for t2 in range(4)
             if s1[t1] and s2[t2] and pair[t1][t2] is not None]
    best: dict[tuple, tuple[int, tuple]] = {}
    r1, r2 = list(s1), list(s2)
    chosen: list = []

    def finish():
        counts = [0, 0, 0, 0]
        for t in range(4):
            for rem, solo in ((r1[t], solo1[t]), (r2[t], solo2[t])):
                if not rem:
                    continue
                if solo is None:
                    return
                if solo != CLOSED:
                    counts[solo] += rem
        npairs = 0
        for (t1, t2), k in chosen:
            res = pair[t1][t2]
            npairs += k
            if res != CLOSED:
                counts[res] += k
        if sum(counts) > MAX_OPEN:
            return
        key = tuple(counts)
        if key not in best or -npairs < best[key][0]:
            best[key] = (-npairs, tuple(chosen))

    def rec(i):
        if i == len(pairs):
            finish()
            return
        t1, t2 = pairs[i]
        for k in range(min(r1[t1], r2[t2]) + 1):
            r1[t1] -= k
            r2[t2] -= k
            if k:
                chosen.append(((t1, t2), k))
            rec(i + 1)
            if k:
                chosen.pop()
            r1[t1] += k
            r2[t2] += k

    rec(0)
    return tuple((key, d, m) for key, (d, m) in sorted(best.items()))


def flip_state(s: tuple) -> tuple:
    return (s[1], s[0], s[2], s[3])


# --- pieces -----------------------------------------------------------------

@dataclass(frozen=True)
class Event:
    """Cost of the three ways a contracted sub-element can sit in an image."""

    fit: int  # its two attachment edges in different images
    through: int | None  # one image passes through it
    cut: int | None  # one image holds both attachment edges without passing through


class Piece:
    __slots__ = ("kind", "a", "b", "table", "kids", "info")

    def __init__(self, kind, a, b, table, kids=(), info=None):
        self.kind = kind
        self.a = a
        self.b = b
        self.table = table  # state -> (cost, choice)
        self.kids = kids
        self.info = info

    def best(self) -> int:
        return min(c for c, _ in self.table.values())


def edge_piece(a: int, b: int, eid: int, unit: int = 1) -> Piece:
    return Piece("edge", a, b, {(0, 0, 1, 0): (unit, None)}, (), eid)


def flipped(p: Piece) -> Piece:
    table = {flip_state(s): (c, s) for s, (c, _) in p.table.items()}
    return Piece("flip", p.b, p.a, table, (p,))


def combine(kind: str, p1: Piece, p2: Piece, a: int, b: int, unit: int = 1) -> Piece:
    table: dict = {}
    for s1, (c1, _) in p1.table.items():
        for s2, (c2, _) in p2.table.items():
            for s, d, m in moves(kind, s1, s2):
                c = c1 + c2 + d * unit
                cur = table.get(s)
                if cur is None or c < cur[0]:
                    table[s] = (c, (s1, s2, m))
    return Piece(kind, a, b, table, (p1, p2))


def pendant(p: Piece) -> Piece:
    """Close terminal b of ``p``; the result is an attachment at a."""
    table: dict = {}
    for s, (c, _) in p.table.items():
        if s[S]:
            continue
        key = (s[A] + s[C], 0, 0, 0)
        if key not in table or c < table[key][0]:
            table[key] = (c, s)
    return Piece("pend", p.a, None, table, (p,))


_LEFT_AT_MIDDLE = (B, C, S)
_RIGHT_AT_MIDDLE = (A, C, S)


def _joins_middle(match) -> bool:
    return any(t1 in _LEFT_AT_MIDDLE and t2 in _RIGHT_AT_MIDDLE for (t1, t2), _ in match)


@lru_cache(maxsize=None)
def event_moves(s1: tuple, s2: tuple) -> tuple:
    """Series moves through a contraction node, tagged fit / through / cut.

    Each side holds exactly one image at the node.  Fit keeps them apart,
    through joins them at the node, cut makes them one image without joining
    them there.
    """
    out = []
    for s, d, m in moves("ser", s1, s2):
        out.append((s, d, m, "through" if _joins_middle(m) else "fit"))
    for s, d, m in moves("cut", s1, s2):
        if _joins_middle(m):
            out.append((s, d, m, "cut"))
    return tuple(out)


def event_piece(p1: Piece, p2: Piece, ev: Event, node: int, unit: int = 1) -> Piece:
    """Series through a contraction node; p1 is oriented (a, node), p2 (node, b)."""
    extra = {"fit": ev.fit, "through": ev.through, "cut": ev.cut}
    table: dict = {}
    for s1, (c1, _) in p1.table.items():
        for s2, (c2, _) in p2.table.items():
            for s, d, m, kind in event_moves(s1, s2):
                if extra[kind] is None:
                    continue
                c = c1 + c2 + d * unit + extra[kind]
                cur = table.get(s)
                if cur is None or c < cur[0]:
                    table[s] = (c, (s1, s2, m, kind))
    return Piece("event", p1.a, p2.b, table, (p1, p2), node)


def fold(p: Piece) -> Piece:
    """Identify the two terminals of ``p``; the result is an attachment there."""
    table: dict = {}
    for s, (c, _) in p.table.items():
        if s[C]:
            continue
        key = (s[A] + s[B] + s[S], 0, 0, 0)
        if key not in table or c < table[key][0]:
            table[key] = (c, s)
    return Piece("fold", p.a, None, table, (p,))


class ReductionError(RuntimeError):
    pass


def reduce_graph(vertices, edges, terminals, events, unit: int = 1) -> Piece:
    """Reduce a series-parallel multigraph to one piece between its terminals.

    ``edges`` is a list of (u, v) with ids given by position; ``events`` maps a
    degree-2 contraction node to its Event.  With one terminal the result is an
    attachment at it (states (n, 0, 0, 0)).  Each tree costs ``unit``; event
    prices are taken as given, so a unit above 1 leaves room for tie-breaks.
    """
    terminals = list(terminals)
    adj: dict[int, dict[int, Piece]] = {v: {} for v in vertices}
    attach: dict[int, Piece] = {}

    def add_attachment(v, p):
        cur = attach.get(v)
        attach[v] = p if cur is None else combine("par", cur, p, v, None, unit)

    def orient(p, a, b=None):
        if a is None:
            return p if p.b == b else flipped(p)
        return p if p.a == a else flipped(p)

    def insert(p):
        a, b = p.a, p.b
        cur = adj[a].get(b)
        if cur is not None:
            p = combine("par", orient(cur, a), p, a, b, unit)
        adj[a][b] = p
        adj[b][a] = p

    # contraction nodes first, before any parallel merge can swallow them
    items: dict[int, Piece] = {}
    inc: dict[int, list[int]] = {x: [] for x in events}
    for i, (u, v) in enumerate(edges):
        items[i] = edge_piece(u, v, i, unit)
        for x in (u, v):
            if x in inc:
                inc[x].append(i)
    nxt = len(edges)
    for x, ev in events.items():
        i, j = inc[x]
        p1, p2 = orient(items.pop(i), None, x), orient(items.pop(j), x)
        piece = event_piece(p1, p2, ev, x, unit)
        for w, old in ((piece.a, i), (piece.b, j)):
            if w in inc and w != x:
                inc[w] = [nxt if k == old else k for k in inc[w]]
        if piece.a == piece.b:
            add_attachment(piece.a, fold(piece))
        else:
            items[nxt] = piece
        nxt += 1
    for p in items.values():
        insert(p)

    keep = set(terminals)
    work = [v for v in vertices if v not in keep and v not in events]
    alive = set(work)
    while work:
        v = work.pop()
        if v not in alive:
            continue
        nbrs = adj[v]
        if len(nbrs) == 1:
            (w, p), = nbrs.items()
            p = orient(p, w)
            if v in attach:
                p = combine("par", p, flipped(attach.pop(v)), w, v, unit)
            del adj[w][v]
            add_attachment(w, pendant(p))
        elif len(nbrs) == 2:
            (w1, p1), (w2, p2) = nbrs.items()
            p1, p2 = orient(p1, w1), orient(p2, v)
            if v in attach:
                p1 = combine("par", p1, flipped(attach.pop(v)), w1, v, unit)
            del adj[w1][v]
            del adj[w2][v]
            insert(combine("ser", p1, p2, w1, w2, unit))
        else:
            continue
        alive.discard(v)
        work.extend(w for w in list(nbrs) if w in alive)
        del adj[v]
    if alive:
        raise ReductionError(f"residual is not series-parallel around {sorted(alive)[:5]}")
    if len(terminals) == 1:
        t = terminals[0]
        if adj[t]:
            raise ReductionError("pieces left at the single terminal")
        return attach[t]
    u, v = terminals
    if set(adj[u]) != {v} or set(adj[v]) != {u}:
        raise ReductionError("terminals are not joined by a single piece")
    root = orient(adj[u][v], u)
    if u in attach:
        root = combine("par", root, attach[u], u, v, unit)
    if v in attach:
        root = combine("par", root, flipped(attach[v]), u, v, unit)
    return root


# --- realisation --------------------------------------------------------------

class Tokens:
    """Union-find over images; each edge starts as its own image."""

    def __init__(self):
        self.parent: list[int] = []
        self.edges: list[int] = []

    def new(self, eid: int) -> int:
        self.parent.append(len(self.parent))
        self.edges.append(eid)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        par = self.parent
        while par[x] != x:
            par[x] = par[par[x]]
            x = par[x]
        return x

    def union(self, x: int, y: int) -> int:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry
        return ry

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, e in enumerate(self.edges):
            out.setdefault(self.find(i), []).append(e)
        return out


def realize(root: Piece, state: tuple, tokens: Tokens, events_out: list) -> list[tuple[int, int]]:
    """Rebuild the images of ``root`` in ``state``; returns open images as (type, token).

    Every edge id gets a token; identifications are unions.  Each contraction
    node appends (node, kind, token_p_side, token_q_side) to ``events_out``.
    """
    order = []
    stack = [(root, state)]
    while stack:
        p, s = stack.pop()
        order.append((p, s))
        choice = p.table[s][1]
        if p.kind in ("par", "ser", "event"):
            stack.append((p.kids[0], choice[0]))
            stack.append((p.kids[1], choice[1]))
        elif p.kind in ("flip", "pend", "fold"):
            stack.append((p.kids[0], choice))
    result: dict[int, list] = {}
    for p, s in reversed(order):
        choice = p.table[s][1]
        if p.kind == "edge":
            out = [(C, tokens.new(p.info))]
        elif p.kind == "flip":
            out = [({A: B, B: A}.get(t, t), tok) for t, tok in result.pop(id(p.kids[0]))]
        elif p.kind == "pend":
            out = []
            for t, tok in result.pop(id(p.kids[0])):
                if t in (A, C):
                    out.append((A, tok))
        elif p.kind == "fold":
            out = [(A, tok) for t, tok in result.pop(id(p.kids[0]))]
        elif p.kind == "event":
            s1, s2, match, kind = choice
            left, right = result.pop(id(p.kids[0])), result.pop(id(p.kids[1]))
            x = next(tok for t, tok in left if t in _LEFT_AT_MIDDLE)
            y = next(tok for t, tok in right if t in _RIGHT_AT_MIDDLE)
            events_out.append((p.info, kind, x, y))
            out = _apply("cut" if kind == "cut" else "ser", left, right, match, tokens)
        else:
            s1, s2, match = choice
            out = _apply(p.kind, result.pop(id(p.kids[0])), result.pop(id(p.kids[1])), match, tokens)
        result[id(p)] = out
    return result[id(root)]


def _apply(kind, left, right, match, tokens):
    pair, solo1, solo2 = _RULES[kind]
    by1: dict[int, list[int]] = {}
    by2: dict[int, list[int]] = {}
    for t, tok in left:
        by1.setdefault(t, []).append(tok)
    for t, tok in right:
        by2.setdefault(t, []).append(tok)
    out = []
    for (t1, t2), k in match:
        for _ in range(k):
            tok = tokens.union(by1[t1].pop(), by2[t2].pop())
            res = pair[t1][t2]
            if res != CLOSED:
                out.append((res, tok))
    for by, solo in ((by1, solo1), (by2, solo2)):
        for t, toks in by.items():
            for tok in toks:
                res = solo[t]
                if res is None:
                    raise ReductionError("invalid leftover image during realisation")
                if res != CLOSED:
                    out.append((res, tok))
    return out
