"""Tree covers: partitions of an edge set into trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph


class InvariantError(RuntimeError):
    """A constructed witness failed validation; always an implementation bug."""


@dataclass(frozen=True)
class TreeCover:
    parts: tuple[frozenset[int], ...]
    edge_set: frozenset[int]
    end_nodes: tuple[int, int] | None = None

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]], edge_set=None, end_nodes=None) -> "TreeCover":
        parts = tuple(frozenset(p) for p in parts)
        if edge_set is None:
            edge_set = frozenset().union(*parts)
        return cls(parts, frozenset(edge_set), end_nodes)

    def __len__(self) -> int:
        return len(self.parts)

    def trees_at(self, g: Graph, v: int) -> list[int]:
        return [i for i, p in enumerate(self.parts) if any(v in g.edges[e] for e in p)]

    def is_proper(self, g: Graph) -> bool:
        if self.end_nodes is None:
            return False
        return proper_for(g, self.parts, *self.end_nodes)

    def problems(self, g: Graph) -> list[str]:
        return cover_problems(g, self.parts, self.edge_set)

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)

    def lines(self, g: Graph) -> list[str]:
        out = []
        for i, p in enumerate(self.parts):
            segs = " ".join(f"{g.edges[e][0]}-{g.edges[e][1]}" for e in sorted(p))
            out.append(f"part {i}: {segs}")
        return out


def is_tree(g: Graph, part: Iterable[int]) -> bool:
    part = list(part)
    if not part:
        return False
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in part:
        a, b = (find(x) for x in g.edges[e])
        if a == b:
            return False
        parent[a] = b
    roots = {find(x) for x in list(parent)}
    return len(roots) == 1


def cover_problems(g: Graph, parts: Sequence[Iterable[int]], edge_set: Iterable[int] | None = None) -> list[str]:
    """Reasons the parts fail to be a tree cover of ``edge_set`` (default: all edges)."""
    want = set(range(g.m)) if edge_set is None else set(edge_set)
    seen: set[int] = set()
    problems = []
    for i, p in enumerate(parts):
        p = set(p)
        if not p:
            problems.append(f"part {i} is empty")
            continue
        if p & seen:
            problems.append(f"part {i} overlaps earlier parts on {sorted(p & seen)}")
        seen |= p
        if not is_tree(g, p):
            problems.append(f"part {i} is not a tree")
    if seen != want:
        missing, extra = sorted(want - seen), sorted(seen - want)
        if missing:
            problems.append(f"edges not covered: {missing}")
        if extra:
            problems.append(f"edges outside the covered set: {extra}")
    return problems


def proper_for(g: Graph, parts: Sequence[Iterable[int]], u: int, v: int) -> bool:
    """Some tree contains ``u`` and a different tree contains ``v``."""
    tu = [i for i, p in enumerate(parts) if any(u in g.edges[e] for e in p)]
    tv = [i for i, p in enumerate(parts) if any(v in g.edges[e] for e in p)]
    return any(a != b for a in tu for b in tv)


def split_at(g: Graph, parts: Sequence[Iterable[int]], x: int) -> bool:
    """Node ``x`` is covered by at least two distinct trees."""
    return sum(1 for p in parts if any(x in g.edges[e] for e in p)) >= 2
