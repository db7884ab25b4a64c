"""Follow-the-arrow dynamics on threads and the Vershik map on diagram paths.

A thread stores, for levels ``0..M`` (``M`` at most the tower depth), an arrow
and a unit offset inside it.  Offsets are positions ``0 <= o < w(arrow)``;
in unweighted towers they are all zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IndeterminateAtDepth, MaxPath, WeightBaseNotUnit
from .tower import CoverTower
from .translators.bratteli import BrattelliDiagram


@dataclass(frozen=True)
class Thread:
    arrows: tuple[int, ...]
    offsets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "offsets", tuple(self.offsets))
        if not self.arrows or len(self.arrows) != len(self.offsets):
            raise ValueError("need one arrow and one offset per level")

    @property
    def height(self) -> int:
        return len(self.arrows) - 1

    def footprint(self, level: int) -> tuple[int, int]:
        return self.arrows[level], self.offsets[level]

    def cut(self, level: int) -> "Thread":
        return Thread(self.arrows[:level + 1], self.offsets[:level + 1])


@dataclass(frozen=True)
class StepResolution:
    thread: Thread
    lookahead_depth_used: int


def project(t: CoverTower, level: int, arrow: int, offset: int = 0) -> Thread:
    """The thread through unit ``offset`` of ``arrow`` at ``level``."""
    t._check_level(level)
    if not 0 <= offset < t.levels[level].weight(arrow):
        raise ValueError(f"offset {offset} outside arrow of weight {t.levels[level].weight(arrow)}")
    arrows, offsets = [arrow], [offset]
    for n in range(level, 0, -1):
        a, o = t.locate(n, arrows[-1], offsets[-1])
        arrows.append(a)
        offsets.append(o)
    return Thread(tuple(reversed(arrows)), tuple(reversed(offsets)))


def minimal_thread(t: CoverTower, arrow: int = 0, level: int | None = None) -> Thread:
    """Thread starting at the first unit of ``arrow`` on ``level`` (default top)."""
    return project(t, t.depth if level is None else level, arrow, 0)


def is_compatible(t: CoverTower, x: Thread) -> bool:
    if x.height > t.depth:
        return False
    for n in range(x.height + 1):
        a, o = x.footprint(n)
        if not (0 <= a < len(t.levels[n].arrows) and 0 <= o < t.levels[n].weight(a)):
            return False
        if n and t.locate(n, a, o) != x.footprint(n - 1):
            return False
    return True


def _successor_candidates(t: CoverTower, x: Thread, top: int) -> set:
    """Level-``M`` footprints of the successor as seen from level ``top``."""
    m = x.height
    lifts = {x.footprint(m)}
    for n in range(m + 1, top + 1):
        lifts = {(a, start + o) for b, o in lifts for a, start in t.occurrences(n, b)}
    g = t.levels[top]
    heads = set()
    for a, o in lifts:
        if o + 1 < g.weight(a):
            heads.add((a, o + 1))
        else:
            heads.update((c, 0) for c in g.out_arrows[g.target(a)])
    out = set()
    for a, o in heads:
        for n in range(top, m, -1):
            a, o = t.locate(n, a, o)
        out.add((a, o))
    return out


def step_resolved(t: CoverTower, x: Thread, truncate: bool = False) -> StepResolution:
    """Successor thread and the number of levels above ``x`` that were needed.

    Inside a weighted arrow the offset simply advances.  At the end of the top
    arrow of ``x`` the next arrow is read off deeper levels: every lift of the
    current position is advanced one unit and projected back; the step is
    resolved once all lifts agree.  With ``truncate`` an unresolved top level
    is dropped instead, keeping the highest level on which the lifts agree.
    """
    m = x.height
    for k in range(m + 1):
        a, o = x.footprint(k)
        if o + 1 < t.levels[k].weight(a):
            top = project(t, k, a, o + 1)
            return StepResolution(Thread(top.arrows + x.arrows[k + 1:],
                                         top.offsets + tuple(q + 1 for q in x.offsets[k + 1:])), 0)
    cands: set = set()
    for top in range(m, t.depth + 1):
        cands = _successor_candidates(t, x, top)
        if len(cands) == 1:
            (a, o), = cands
            return StepResolution(project(t, m, a, o), top - m)
    if truncate:
        threads = [project(t, m, a, o) for a, o in cands]
        for level in range(m - 1, -1, -1):
            if len({th.footprint(level) for th in threads}) == 1:
                return StepResolution(threads[0].cut(level), t.depth - m)
    raise IndeterminateAtDepth(t.depth, sorted(cands))


def step(t: CoverTower, x: Thread, truncate: bool = False) -> Thread:
    return step_resolved(t, x, truncate).thread


def orbit(t: CoverTower, x: Thread, k: int, truncate: bool = False) -> list[Thread]:
    """``[x, f(x), ..., f^k(x)]``."""
    out = [x]
    for _ in range(k):
        out.append(step(t, out[-1], truncate))
    return out


def itinerary(t: CoverTower, x: Thread, k: int, truncate: bool = True,
              partial: bool = False) -> str:
    """Labels of the level-0 loops visited by ``x, f(x), ..., f^{k-1}(x)``.

    With ``partial`` the word stops early, without error, at the first step
    the truncation cannot determine.
    """
    if any(a.weight != 1 for a in t.levels[0].arrows):
        raise WeightBaseNotUnit("itineraries need weight-1 arrows at level 0")
    g0 = t.levels[0]
    out = []
    for i in range(k):
        out.append(g0.label(x.arrows[0]))
        if i + 1 < k:
            try:
                x = step(t, x, truncate)
            except IndeterminateAtDepth:
                if partial:
                    break
                raise
    return "".join(out)


# ---------------------------------------------------------------- Bratteli-Vershik

@dataclass(frozen=True)
class BVPathPoint:
    """``edges[i-1]`` indexes ``E_i`` of the diagram."""
    edges: tuple[int, ...]


def is_bv_path(d: BrattelliDiagram, p: BVPathPoint) -> bool:
    if not p.edges or len(p.edges) > d.depth:
        return False
    es = [d.edge(i, k) for i, k in enumerate(p.edges, start=1)]
    return es[0].source == d.vertices[0][0] and all(
        a.target == b.source for a, b in zip(es, es[1:]))


def minimal_bv_path(d: BrattelliDiagram, vertex: str, level: int | None = None) -> BVPathPoint:
    """The path from the root to ``vertex`` using minimal incoming edges."""
    level = d.depth if level is None else level
    path, v = [], vertex
    for i in range(level, 0, -1):
        k = d.incoming(i, v)[0]
        path.append(k)
        v = d.edge(i, k).source
    return BVPathPoint(tuple(reversed(path)))


def vershik_step(d: BrattelliDiagram, p: BVPathPoint) -> BVPathPoint:
    """Adic successor: bump the lowest non-maximal edge, minimal edges below."""
    for i, k in enumerate(p.edges, start=1):
        e = d.edge(i, k)
        inc = d.incoming(i, e.target)
        pos = inc.index(k)
        if pos + 1 < len(inc):
            nk = inc[pos + 1]
            below = minimal_bv_path(d, d.edge(i, nk).source, i - 1).edges if i > 1 else ()
            return BVPathPoint(below + (nk,) + p.edges[i:])
    raise MaxPath(f"path {p.edges} is maximal on all {len(p.edges)} levels")


def thread_to_bv_path(t: CoverTower, d: BrattelliDiagram, x: Thread) -> BVPathPoint:
    """Diagram path of a thread for ``d = cover_to_bv(t)``.

    Level ``n`` of the thread selects the incoming edge of ``P(gamma_n)`` whose
    rank is the position of ``gamma_{n-1}`` inside ``pi_n(gamma_n)``.
    """
    names = [d.vertices[n + 1] for n in range(x.height + 1)]
    a0, o0 = x.footprint(0)
    edges = [d.incoming(1, names[0][a0])[o0]]
    for n in range(1, x.height + 1):
        a, o = x.footprint(n)
        cum = t._cumulative[n][a]
        j = max(i for i in range(len(cum) - 1) if cum[i] <= o)
        edges.append(d.incoming(n + 1, names[n][a])[j])
    return BVPathPoint(tuple(edges))
