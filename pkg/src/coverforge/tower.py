"""Finite-depth graph covers.

A ``CoverTower`` holds graphs ``levels[0..N]`` and bonding maps
``bondings[0..N-1]``; ``bondings[n-1]`` is the map from level ``n`` to level
``n-1`` and sends every level-``n`` arrow to a path of level-``n-1`` arrows
(length one in the unweighted case).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from itertools import accumulate
from typing import Sequence

import numpy as np

from .digraph import Arrow, DiGraph, ValidationReport, validate_graph
from .errors import (LevelOutOfRange, NotContractible, WeightBaseNotUnit)

Bonding = tuple  # tuple[tuple[int, ...], ...]


class CoverTower:
    def __init__(self, levels: Sequence[DiGraph], bondings: Sequence[Sequence[Sequence[int]]]):
        self.levels = tuple(levels)
        self.bondings = tuple(tuple(tuple(img) for img in b) for b in bondings)
        if len(self.bondings) != len(self.levels) - 1:
            raise ValueError("need exactly one bonding map per level above 0")
        for n, b in enumerate(self.bondings, start=1):
            if len(b) != len(self.levels[n].arrows):
                raise ValueError(f"bonding {n} has {len(b)} images for "
                                 f"{len(self.levels[n].arrows)} arrows")
        self._tele = {}

    def __repr__(self):
        shape = ", ".join(f"{len(g.vertices)}v/{len(g.arrows)}a" for g in self.levels)
        return f"CoverTower(depth={self.depth}: {shape})"

    def __eq__(self, other):
        return (isinstance(other, CoverTower) and self.levels == other.levels
                and self.bondings == other.bondings)

    def __hash__(self):
        return hash((self.levels, self.bondings))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def _check_level(self, n, lo=0):
        if not lo <= n <= self.depth:
            raise LevelOutOfRange(f"level {n} outside {lo}..{self.depth}")

    def bonding(self, n: int) -> Bonding:
        self._check_level(n, 1)
        return self.bondings[n - 1]

    def image(self, n: int, arrow: int) -> tuple[int, ...]:
        return self.bonding(n)[arrow]

    def telescoped_image(self, m: int, n: int, arrow: int) -> tuple[int, ...]:
        """Path in level ``m`` obtained by pushing a level-``n`` arrow down."""
        if m == n:
            return (arrow,)
        key = (m, n, arrow)
        hit = self._tele.get(key)
        if hit is None:
            hit = ()
            for b in self.image(n, arrow):
                hit += self.telescoped_image(m, n - 1, b)
            self._tele[key] = hit
        return hit

    def telescoped_path(self, m: int, n: int, path: Sequence[int]) -> tuple[int, ...]:
        out = ()
        for a in path:
            out += self.telescoped_image(m, n, a)
        return out

    @cached_property
    def _cumulative(self):
        # _cumulative[n][a]: unit start offsets of the image path of arrow a
        out = [None]
        for n in range(1, self.depth + 1):
            g_low = self.levels[n - 1]
            out.append(tuple(
                (0,) + tuple(accumulate(g_low.arrows[b].weight for b in img))
                for img in self.bondings[n - 1]))
        return out

    def locate(self, n: int, arrow: int, offset: int) -> tuple[int, int]:
        """Level-``n-1`` arrow and offset containing unit ``offset`` of ``arrow``."""
        cum = self._cumulative[n][arrow]
        j = bisect_right(cum, offset) - 1
        return self.bondings[n - 1][arrow][j], offset - cum[j]

    @cached_property
    def _occurrences(self):
        # _occurrences[n][b]: (a, unit offset) for every appearance of level-(n-1)
        # arrow b inside the image of a level-n arrow a
        out = [None]
        for n in range(1, self.depth + 1):
            occ = {b: [] for b in range(len(self.levels[n - 1].arrows))}
            for a, img in enumerate(self.bondings[n - 1]):
                cum = self._cumulative[n][a]
                for j, b in enumerate(img):
                    occ[b].append((a, cum[j]))
            out.append({b: tuple(v) for b, v in occ.items()})
        return out

    def occurrences(self, n: int, arrow: int) -> tuple[tuple[int, int], ...]:
        return self._occurrences[n][arrow]

    def is_unweighted(self) -> bool:
        return all(len(img) == 1 for b in self.bondings for img in b) and \
            all(a.weight == 1 for g in self.levels for a in g.arrows)


@dataclass(frozen=True)
class BondingReport:
    level: int
    edge_surjective: bool
    positive_directional: bool
    negative_directional: bool
    vertex_consistent: bool
    weight_conserved: bool
    problems: tuple[str, ...] = ()

    @property
    def legal(self) -> bool:
        return (self.edge_surjective and self.positive_directional
                and self.vertex_consistent and self.weight_conserved)


@dataclass(frozen=True)
class TowerReport:
    level_reports: tuple[ValidationReport, ...]
    bonding_reports: tuple[BondingReport, ...]
    base_problems: tuple[str, ...] = ()

    @property
    def legal(self) -> bool:
        return (not self.base_problems and all(r.ok for r in self.level_reports)
                and all(b.legal for b in self.bonding_reports))

    @property
    def bi_directional(self) -> bool:
        return all(b.positive_directional and b.negative_directional
                   for b in self.bonding_reports)

    def problems(self) -> list[str]:
        out = list(self.base_problems)
        for n, r in enumerate(self.level_reports):
            out += [f"level {n}: {p}" for p in r.problems]
        for b in self.bonding_reports:
            out += [f"bonding {b.level}: {p}" for p in b.problems]
        return out

    def __str__(self):
        lines = [f"legal: {self.legal}"]
        for b in self.bonding_reports:
            lines.append(
                f"bonding {b.level}: edge_surjective={b.edge_surjective} "
                f"positive={b.positive_directional} negative={b.negative_directional} "
                f"vertex_consistent={b.vertex_consistent} weight_conserved={b.weight_conserved}")
        lines += self.problems()
        return "\n".join(lines)


def _check_bonding(fine: DiGraph, coarse: DiGraph, images, n: int) -> BondingReport:
    problems = []
    covered = set()
    paths_ok = True
    for a, img in enumerate(images):
        if not img or any(not 0 <= b < len(coarse.arrows) for b in img):
            problems.append(f"arrow {a}: image {img} is empty or out of range")
            paths_ok = False
            continue
        covered.update(img)
        if not coarse.is_path(img):
            problems.append(f"arrow {a}: image {img} is not a path")
            paths_ok = False
    missing = sorted(set(range(len(coarse.arrows))) - covered)
    if missing:
        problems.append(f"not edge surjective: arrows {missing} of level {n - 1} unused")

    def head(a):
        return coarse.arrows[images[a][0]].source

    def tail(a):
        return coarse.arrows[images[a][-1]].target

    positive = negative = consistent = paths_ok
    if paths_ok:
        for v in fine.vertices:
            outs, ins = fine.out_arrows[v], fine.in_arrows[v]
            if len({tail(a) for a in outs}) > 1:
                positive = False
                problems.append(f"not positive directional at vertex {v!r}")
            if len({head(a) for a in ins}) > 1:
                negative = False
            if len({tail(a) for a in ins} | {head(a) for a in outs}) > 1:
                consistent = False
                problems.append(f"vertex {v!r}: images of incoming and outgoing arrows do not meet")
    weight_ok = True
    for a, img in enumerate(images):
        if paths_ok and fine.arrows[a].weight != coarse.path_weight(img):
            weight_ok = False
            problems.append(f"arrow {a}: weight {fine.arrows[a].weight} != image weight "
                            f"{coarse.path_weight(img)}")
    return BondingReport(n, not missing, positive, negative, consistent, weight_ok,
                         tuple(problems))


def validate_tower(t: CoverTower) -> TowerReport:
    base = []
    if len(t.levels[0].vertices) != 1:
        base.append("level 0 must have exactly one vertex")
    level_reports = tuple(validate_graph(g) for g in t.levels)
    bonding_reports = tuple(
        _check_bonding(t.levels[n], t.levels[n - 1], t.bondings[n - 1], n)
        for n in range(1, t.depth + 1))
    return TowerReport(level_reports, bonding_reports, tuple(base))


def winding_matrix(t: CoverTower, n: int) -> np.ndarray:
    """Rows are level-``n`` arrows, columns level-``n-1`` arrows."""
    t._check_level(n, 1)
    rows, cols = len(t.levels[n].arrows), len(t.levels[n - 1].arrows)
    w = np.zeros((rows, cols), dtype=object)
    for a, img in enumerate(t.bondings[n - 1]):
        for b in img:
            w[a, b] += 1
    return w


def telescoped_winding(t: CoverTower, m: int, n: int) -> np.ndarray:
    """Product ``W^n ... W^{m+1}`` computed by matrix multiplication."""
    t._check_level(m)
    t._check_level(n)
    out = np.identity(len(t.levels[m].arrows), dtype=object)
    for k in range(m + 1, n + 1):
        out = winding_matrix(t, k).dot(out)
    return out


def telescope(t: CoverTower, m: int, n: int) -> CoverTower:
    """Drop levels strictly between ``m`` and ``n`` and compose the bondings."""
    if not 0 <= m < n <= t.depth:
        raise LevelOutOfRange(f"need 0 <= m < n <= {t.depth}, got m={m}, n={n}")
    composed = tuple(t.telescoped_image(m, n, a) for a in range(len(t.levels[n].arrows)))
    levels = t.levels[:m + 1] + t.levels[n:]
    bondings = t.bondings[:m] + (composed,) + t.bondings[n:]
    return CoverTower(levels, bondings)


def select_levels(t: CoverTower, keep: Sequence[int]) -> CoverTower:
    """Telescope onto the increasing level list ``keep`` (must start at 0)."""
    keep = list(keep)
    if not keep or keep[0] != 0 or any(b <= a for a, b in zip(keep, keep[1:])):
        raise LevelOutOfRange(f"bad level selection {keep}")
    levels = [t.levels[k] for k in keep]
    bondings = [tuple(t.telescoped_image(lo, hi, a) for a in range(len(t.levels[hi].arrows)))
                for lo, hi in zip(keep, keep[1:])]
    return CoverTower(levels, bondings)


def truncate(t: CoverTower, depth: int) -> CoverTower:
    t._check_level(depth)
    return CoverTower(t.levels[:depth + 1], t.bondings[:depth])


def weights_vector(t: CoverTower, n: int) -> np.ndarray:
    """Weights at level ``n`` from the all-ones base: ``w(n) = W^n w(n-1)``."""
    t._check_level(n)
    if any(a.weight != 1 for a in t.levels[0].arrows):
        raise WeightBaseNotUnit("level-0 arrows must all have weight 1")
    w = np.ones(len(t.levels[0].arrows), dtype=object)
    for k in range(1, n + 1):
        w = winding_matrix(t, k).dot(w)
    return w


def with_consistent_weights(t: CoverTower) -> CoverTower:
    """Copy of ``t`` whose arrow weights are recomputed from a unit base."""
    levels = []
    for n, g in enumerate(t.levels):
        if n == 0:
            w = [1] * len(g.arrows)
        else:
            prev = [a.weight for a in levels[-1].arrows]
            w = [sum(prev[b] for b in img) for img in t.bondings[n - 1]]
        levels.append(DiGraph(g.vertices, [Arrow(a.source, a.target, w[i], a.label)
                                           for i, a in enumerate(g.arrows)]))
    return CoverTower(levels, t.bondings)


def levels_isomorphic(t1: CoverTower, t2: CoverTower) -> bool:
    """Level-wise isomorphism that fixes arrow indices.

    Arrows are matched by index; the check is that a vertex bijection exists
    at each level carrying sources and targets onto each other, and that the
    bonding maps and weights coincide.
    """
    if t1.depth != t2.depth or t1.bondings != t2.bondings:
        return False
    for g1, g2 in zip(t1.levels, t2.levels):
        if len(g1.arrows) != len(g2.arrows) or len(g1.vertices) != len(g2.vertices):
            return False
        vmap = {}
        for a1, a2 in zip(g1.arrows, g2.arrows):
            if a1.weight != a2.weight:
                return False
            for u1, u2 in ((a1.source, a2.source), (a1.target, a2.target)):
                if vmap.setdefault(u1, u2) != u2:
                    return False
        if len(set(vmap.values())) != len(vmap):
            return False
    return True


def _contract_graph(g: DiGraph):
    """Chains through regular vertices merged into single weighted arrows.

    Returns the contracted graph and, per contracted arrow, the original arrow
    path it replaces.
    """
    regular = {v for v in g.vertices
               if len(g.in_arrows[v]) == 1 and len(g.out_arrows[v]) == 1}
    kept = [v for v in g.vertices if v not in regular]
    # cycles made only of regular vertices keep their first vertex
    seen = set()
    for v in g.vertices:
        if v in regular and v not in seen:
            u, ring = v, []
            while u in regular and u not in seen:
                seen.add(u)
                ring.append(u)
                u = g.arrows[g.out_arrows[u][0]].target
            if u == v:
                kept.append(v)
    kept_set = set(kept)
    chains, arrows = [], []
    for v in [x for x in g.vertices if x in kept_set]:
        for i in g.out_arrows[v]:
            path = [i]
            u = g.arrows[i].target
            while u not in kept_set:
                j = g.out_arrows[u][0]
                path.append(j)
                u = g.arrows[j].target
            chains.append(tuple(path))
            labels = [g.arrows[k].label for k in path]
            label = None if any(l is None for l in labels) else "".join(labels)
            arrows.append(Arrow(v, u, g.path_weight(path), label))
    return DiGraph([x for x in g.vertices if x in kept_set], arrows), chains


def contract_regular(t: CoverTower) -> CoverTower:
    """Weighted cover obtained by contracting regular-vertex chains.

    Every bonding image must split at contracted-level vertices; otherwise
    ``NotContractible`` is raised.
    """
    contracted = [_contract_graph(g) for g in t.levels]
    bondings = []
    for n in range(1, t.depth + 1):
        low_g, low_chains = contracted[n - 1]
        start_of = {}
        for k, ch in enumerate(low_chains):
            start_of.setdefault(ch[0], []).append(k)
        images = []
        for ch in contracted[n][1]:
            path = []
            for a in ch:
                path.extend(t.bondings[n - 1][a])
            out, pos = [], 0
            while pos < len(path):
                for k in start_of.get(path[pos], ()):
                    c = low_chains[k]
                    if tuple(path[pos:pos + len(c)]) == c:
                        out.append(k)
                        pos += len(c)
                        break
                else:
                    raise NotContractible(
                        f"level {n}: image {tuple(path)} does not split into contracted arrows")
            images.append(tuple(out))
        bondings.append(images)
    return CoverTower([g for g, _ in contracted], bondings)
