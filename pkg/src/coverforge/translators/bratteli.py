"""Ordered Bratteli diagrams and their translation to and from graph covers.

A cover of depth ``N`` becomes a diagram with levels ``V_0..V_{N+1}``: the root
``V_0``, then one vertex per arrow of ``G_n`` in ``V_{n+1}``.  Level-0 arrows
receive ``w(a)`` edges from the root.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..digraph import Arrow, DiGraph
from ..errors import DepthInsufficient
from ..tower import CoverTower

ROOT = "v0"


@dataclass(frozen=True)
class BVEdge:
    source: str  # vertex of the previous level
    target: str
    rank: int  # position among the incoming edges of ``target``


class BrattelliDiagram:
    """``vertices[i]`` lists ``V_i``; ``edges[i-1]`` lists ``E_i`` (``V_{i-1} -> V_i``)."""

    def __init__(self, vertices: Sequence[Sequence[str]], edges: Sequence[Sequence[BVEdge]]):
        self.vertices = tuple(tuple(v) for v in vertices)
        self.edges = tuple(tuple(e) for e in edges)
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("need one edge set per level above the root")
        self._incoming = []
        for i, es in enumerate(self.edges, start=1):
            inc = {v: [] for v in self.vertices[i]}
            for k, e in enumerate(es):
                inc.setdefault(e.target, []).append(k)
            self._incoming.append({v: tuple(sorted(ks, key=lambda k: es[k].rank))
                                   for v, ks in inc.items()})

    def __repr__(self):
        return f"BrattelliDiagram(levels={self.depth}, sizes={[len(v) for v in self.vertices]})"

    def __eq__(self, other):
        return (isinstance(other, BrattelliDiagram) and self.vertices == other.vertices
                and self.edges == other.edges)

    @property
    def depth(self) -> int:
        return len(self.edges)

    def incoming(self, level: int, vertex: str) -> tuple[int, ...]:
        """Indices into ``edges[level-1]`` of edges ending at ``vertex``, in order."""
        return self._incoming[level - 1][vertex]

    def edge(self, level: int, k: int) -> BVEdge:
        return self.edges[level - 1][k]

    def problems(self) -> list[str]:
        out = []
        if self.vertices[0] != (ROOT,):
            out.append(f"level 0 must be the single root {ROOT!r}")
        for i, es in enumerate(self.edges, start=1):
            lower, upper = set(self.vertices[i - 1]), set(self.vertices[i])
            for k, e in enumerate(es):
                if e.source not in lower or e.target not in upper:
                    out.append(f"E_{i} edge {k}: endpoints outside V_{i - 1} x V_{i}")
            used = {e.source for e in es}
            for v in self.vertices[i - 1]:
                if v not in used:
                    out.append(f"V_{i - 1} vertex {v!r} has no outgoing edge")
            for v in self.vertices[i]:
                ranks = sorted(es[k].rank for k in self._incoming[i - 1].get(v, ()))
                if not ranks:
                    out.append(f"V_{i} vertex {v!r} has no incoming edge")
                elif ranks != list(range(len(ranks))):
                    out.append(f"V_{i} vertex {v!r}: incoming ranks {ranks} are not 0..k-1")
        return out

    def path_counts(self) -> list[dict]:
        counts = [{ROOT: 1}]
        for i, es in enumerate(self.edges, start=1):
            c = {v: 0 for v in self.vertices[i]}
            for e in es:
                c[e.target] += counts[-1][e.source]
            counts.append(c)
        return counts


def _names(g: DiGraph) -> list[str]:
    labels = [a.label for a in g.arrows]
    if None not in labels and len(set(labels)) == len(labels):
        return labels
    return [str(i) for i in range(len(g.arrows))]


def cover_to_bv(t: CoverTower) -> BrattelliDiagram:
    """Vertex ``P(a)`` per arrow; ``pi(a) = a_1..a_k`` gives ``k`` ranked edges
    from ``P(a_1), ..., P(a_k)`` into ``P(a)``."""
    names = [_names(g) for g in t.levels]
    vertices = [(ROOT,)] + [tuple(n) for n in names]
    edges = [[]]
    for a, arrow in enumerate(t.levels[0].arrows):
        for r in range(arrow.weight):
            edges[0].append(BVEdge(ROOT, names[0][a], r))
    for n in range(1, t.depth + 1):
        es = []
        for a, img in enumerate(t.bondings[n - 1]):
            es += [BVEdge(names[n - 1][b], names[n][a], r) for r, b in enumerate(img)]
        edges.append(es)
    return BrattelliDiagram(vertices, edges)


def _images(d: BrattelliDiagram, i: int) -> list[tuple[int, ...]]:
    """Ordered sources of every ``V_i`` vertex, as indices into ``V_{i-1}``."""
    index = {v: k for k, v in enumerate(d.vertices[i - 1])}
    return [tuple(index[d.edge(i, k).source] for k in d.incoming(i, v))
            for v in d.vertices[i]]


def follower_relations(d: BrattelliDiagram, follower_depth: int | None = None) -> list[set]:
    """``F[n]``: pairs ``(w, v)`` of ``G_n`` arrows (``V_{n+1}`` indices) with ``v``
    following ``w``.

    Base pairs are consecutive sources in one ordered image one level up;
    a pair ``(u1, u2)`` one level up contributes (last of ``u1``, first of ``u2``).
    Level ``n`` uses images up to level ``n + follower_depth`` of the cover.
    """
    levels = d.depth  # cover levels 0..levels-1
    images = [None, None] + [_images(d, i) for i in range(2, d.depth + 1)]
    # images[i][a]: image of V_i vertex a, i.e. pi_{i-1} applied to a level-(i-1) arrow
    cap = levels if follower_depth is None else follower_depth
    rel = []
    for n in range(levels):
        limit = min(levels - 1, n + cap)
        pairs: set = set()  # follower relation at level ``limit``
        for m in range(limit - 1, n - 1, -1):
            img = images[m + 2]
            nxt = set()
            for path in img:
                nxt.update(zip(path, path[1:]))
            nxt.update((img[u1][-1], img[u2][0]) for u1, u2 in pairs)
            pairs = nxt
        rel.append(pairs)
    return rel


def source_relation(d: BrattelliDiagram, n: int, follower_depth: int | None = None) -> set:
    """Directly related pairs ``{v, v'}`` sharing a predecessor, without the
    transitive hull."""
    f = follower_relations(d, follower_depth)[n]
    by_w: dict = {}
    for w, v in f:
        by_w.setdefault(w, set()).add(v)
    return {frozenset((v, x)) for vs in by_w.values() for v in vs for x in vs if v != x}


def raw_source_classes(d: BrattelliDiagram, n: int, follower_depth: int | None = None) -> set:
    """Distinct follower sets ``{v : (w, v) in F}``; these are the classes one
    would get by trusting the direct relation alone."""
    f = follower_relations(d, follower_depth)[n]
    by_w: dict = {}
    for w, v in f:
        by_w.setdefault(w, set()).add(v)
    return {frozenset(vs) for vs in by_w.values()}


def _clusters(k: int, pairs: set) -> tuple[list, list] | None:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w, v in pairs:
        parent[find(("t", w))] = find(("s", v))
    if any(("s", a) not in parent or ("t", a) not in parent for a in range(k)):
        return None
    names: dict = {}
    src, tgt = [], []
    for a in range(k):
        for end, out in (("s", src), ("t", tgt)):
            root = find((end, a))
            out.append(names.setdefault(root, f"v{len(names)}"))
    return src, tgt


@dataclass(frozen=True)
class BVTranslation:
    tower: CoverTower
    complete: bool


def bv_to_cover(d: BrattelliDiagram, follower_depth: int | None = None) -> BVTranslation:
    """Graph cover from an ordered diagram; vertices are clusters of arrow ends.

    Levels are emitted while every arrow has both a predecessor and a successor
    witness; ``complete`` is false when some emitted level with more than one
    vertex did not look at every diagram level above it.
    """
    cap = d.depth if follower_depth is None else follower_depth
    rel = follower_relations(d, cap)
    counts = d.path_counts()
    levels, bondings = [], []
    complete = True
    for n in range(d.depth):
        k = len(d.vertices[n + 1])
        # a lone arrow can only follow itself
        ends = _clusters(k, rel[n] if k > 1 else {(0, 0)})
        if ends is None:
            break
        src, tgt = ends
        names = d.vertices[n + 1]
        arrows = [Arrow(src[a], tgt[a], counts[n + 1][names[a]], names[a]) for a in range(k)]
        vertices = sorted(set(src) | set(tgt), key=lambda v: int(v[1:]))
        levels.append(DiGraph(vertices, arrows))
        if n >= 1:
            bondings.append(_images(d, n + 1))
        if len(vertices) > 1 and n + cap < d.depth - 1:
            complete = False
    if not levels:
        raise DepthInsufficient("level 0 arrows lack follower witnesses; the diagram is too shallow")
    return BVTranslation(CoverTower(levels, bondings), complete)
