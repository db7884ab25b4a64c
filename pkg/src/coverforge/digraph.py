"""Directed multigraphs with parallel arrows and self-loops.

Arrows are identified by their index in ``DiGraph.arrows``; labels are for
display only.  Paths and loops are plain tuples of arrow indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

from .errors import CycleBudgetExceeded

Vertex = Hashable


@dataclass(frozen=True)
class Arrow:
    source: Vertex
    target: Vertex
    weight: int = 1
    label: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=True)
class DiGraph:
    vertices: tuple
    arrows: tuple[Arrow, ...]

    def __init__(self, vertices: Sequence[Vertex], arrows: Sequence[Arrow]):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "arrows", tuple(arrows))

    @classmethod
    def from_edges(cls, edges, vertices=None, labels=None, weights=None):
        """Build a graph from ``(source, target)`` pairs; vertices default to
        the endpoints in first-seen order."""
        edges = list(edges)
        if vertices is None:
            seen = {}
            for s, t in edges:
                seen.setdefault(s, None)
                seen.setdefault(t, None)
            vertices = list(seen)
        arrows = []
        for i, (s, t) in enumerate(edges):
            arrows.append(Arrow(s, t,
                                1 if weights is None else weights[i],
                                None if labels is None else labels[i]))
        return cls(vertices, arrows)

    def __len__(self):
        return len(self.arrows)

    @cached_property
    def out_arrows(self) -> dict:
        out = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            out.setdefault(a.source, []).append(i)
        return {v: tuple(ids) for v, ids in out.items()}

    @cached_property
    def in_arrows(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            inc.setdefault(a.target, []).append(i)
        return {v: tuple(ids) for v, ids in inc.items()}

    @cached_property
    def label_index(self) -> dict:
        return {a.label: i for i, a in enumerate(self.arrows) if a.label is not None}

    def source(self, i: int) -> Vertex:
        return self.arrows[i].source

    def target(self, i: int) -> Vertex:
        return self.arrows[i].target

    def weight(self, i: int) -> int:
        return self.arrows[i].weight

    def label(self, i: int) -> str:
        lab = self.arrows[i].label
        return str(i) if lab is None else lab

    def is_path(self, path: Sequence[int]) -> bool:
        if not path:
            return False
        return all(self.arrows[a].target == self.arrows[b].source
                   for a, b in zip(path, path[1:]))

    def is_loop(self, path: Sequence[int]) -> bool:
        return self.is_path(path) and self.arrows[path[-1]].target == self.arrows[path[0]].source

    def path_weight(self, path: Sequence[int]) -> int:
        return sum(self.arrows[i].weight for i in path)

    def single_vertex(self) -> bool:
        return len(self.vertices) == 1


def validate_graph(g: DiGraph) -> ValidationReport:
    problems = []
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        problems.append("duplicate vertex identifiers")
    for i, a in enumerate(g.arrows):
        if a.source not in vset:
            problems.append(f"arrow {i}: unknown source {a.source!r}")
        if a.target not in vset:
            problems.append(f"arrow {i}: unknown target {a.target!r}")
        if not isinstance(a.weight, int) or a.weight < 1:
            problems.append(f"arrow {i}: weight {a.weight!r} is not a positive integer")
    for v in g.vertices:
        if not g.out_arrows.get(v):
            problems.append(f"vertex {v!r}: no outgoing arrow")
        if not g.in_arrows.get(v):
            problems.append(f"vertex {v!r}: no incoming arrow")
    return ValidationReport(tuple(problems))


def _reachable(g: DiGraph, start, forward=True) -> set:
    adj = g.out_arrows if forward else g.in_arrows
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for i in adj.get(v, ()):
            w = g.arrows[i].target if forward else g.arrows[i].source
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_strongly_connected(g: DiGraph) -> bool:
    # Arrow-pair connectivity reduces to vertex connectivity because every
    # vertex of a valid graph has in- and out-arrows.
    if not g.vertices:
        return False
    v0 = g.vertices[0]
    n = len(g.vertices)
    return len(_reachable(g, v0, True)) == n and len(_reachable(g, v0, False)) == n


def strongly_connected_components(g: DiGraph) -> list[frozenset]:
    comps, assigned = [], set()
    for v in g.vertices:
        if v in assigned:
            continue
        comp = frozenset(_reachable(g, v, True) & _reachable(g, v, False))
        assigned |= comp
        comps.append(comp)
    return comps


def canonical_rotation(cycle: Sequence[int]) -> tuple[int, ...]:
    cycle = tuple(cycle)
    return min(cycle[k:] + cycle[:k] for k in range(len(cycle)))


def enumerate_simple_cycles(g: DiGraph, max_count: int = 10_000) -> list[tuple[int, ...]]:
    """All vertex-simple directed cycles as arrow-index tuples.

    Each cycle is rotated to its lexicographically least form and the list is
    sorted.  Parallel arrows give distinct cycles.  Raises
    ``CycleBudgetExceeded`` instead of truncating.
    """
    order = {v: k for k, v in enumerate(g.vertices)}
    found = []

    for start in g.vertices:
        k0 = order[start]
        path: list[int] = []
        on_path = {start}

        def extend(v):
            for i in g.out_arrows[v]:
                w = g.arrows[i].target
                if order[w] < k0:
                    continue
                if w == start:
                    found.append(canonical_rotation(path + [i]))
                    if len(found) > max_count:
                        raise CycleBudgetExceeded(max_count)
                elif w not in on_path:
                    on_path.add(w)
                    path.append(i)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(start)
    return sorted(found)


def enumerate_closed_walks(g: DiGraph, max_length: int, max_count: int = 100_000) -> list[tuple[int, ...]]:
    """Closed walks (self-intersections allowed) of length ``1..max_length``,
    every rotation listed separately."""
    walks = []
    for v in g.vertices:
        stack = [(v, ())]
        while stack:
            u, path = stack.pop()
            for i in g.out_arrows[u]:
                p = path + (i,)
                w = g.arrows[i].target
                if w == v:
                    walks.append(p)
                    if len(walks) > max_count:
                        raise CycleBudgetExceeded(max_count)
                if len(p) < max_length:
                    stack.append((w, p))
    return sorted(set(walks), key=lambda p: (len(p), p))


def shortest_path(g: DiGraph, start, goal) -> tuple[int, ...] | None:
    """Arrow path from vertex ``start`` to ``goal`` (empty tuple if equal)."""
    if start == goal:
        return ()
    prev = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in g.out_arrows[v]:
                w = g.arrows[i].target
                if w not in prev:
                    prev[w] = i
                    if w == goal:
                        path = []
                        while w != start:
                            a = prev[w]
                            path.append(a)
                            w = g.arrows[a].source
                        return tuple(reversed(path))
                    nxt.append(w)
        frontier = nxt
    return None


def special_vertices(g: DiGraph) -> tuple[list, list, list]:
    left = [v for v in g.vertices if len(g.in_arrows[v]) >= 2]
    right = [v for v in g.vertices if len(g.out_arrows[v]) >= 2]
    rs = set(right)
    bi = [v for v in left if v in rs]
    return left, right, bi
