"""Nested Kakutani-Rokhlin tower data and its graph cover.

Level ``n`` has columns ``0..N(n)-1`` with heights ``h_i(n)``; atom ``(i, j)``
stands for ``T^j(B_i(n))``.  ``atom_maps[n-1][i][j]`` is the level-``(n-1)``
atom containing ``(i, j)``, and ``transitions[n]`` lists the pairs ``(i, i')``
with ``T^{h_i}(B_i(n))`` meeting ``B_{i'}(n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..digraph import Arrow, DiGraph, ValidationReport
from ..errors import KRInvalid
from ..tower import CoverTower


@dataclass(frozen=True)
class KRTower:
    heights: tuple[tuple[int, ...], ...]
    transitions: tuple[frozenset, ...]
    atom_maps: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    require_kr6: bool = True

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(tuple(h) for h in self.heights))
        object.__setattr__(self, "transitions", tuple(frozenset(map(tuple, t))
                                                      for t in self.transitions))
        object.__setattr__(self, "atom_maps", tuple(tuple(tuple(tuple(x) for x in col)
                                                          for col in m) for m in self.atom_maps))
        if not (len(self.heights) == len(self.transitions) == len(self.atom_maps) + 1):
            raise ValueError("need heights and transitions per level and one atom map per level above 0")

    @classmethod
    def from_decompositions(cls, heights, transitions, decompositions, require_kr6=True):
        """Atom maps from column decompositions: ``decompositions[n-1][i]`` is the
        sequence of level-``(n-1)`` columns that column ``i`` runs through."""
        maps = []
        for n, dec in enumerate(decompositions, start=1):
            low = heights[n - 1]
            maps.append(tuple(tuple((c, j) for c in cols for j in range(low[c])) for cols in dec))
        return cls(heights, transitions, maps, require_kr6)

    @property
    def depth(self) -> int:
        return len(self.heights) - 1

    def columns(self, n: int) -> int:
        return len(self.heights[n])


def validate_kr(k: KRTower) -> ValidationReport:
    """Problems are prefixed with the axiom they violate (KR1, KR2, KR5, KR6,
    ARROWS for transitions that do not project, BASE for level 0)."""
    problems = []
    if k.heights[0] != (1,) or k.transitions[0] != frozenset({(0, 0)}):
        problems.append("BASE: level 0 must be one column of height 1 returning to itself")
    for n in range(k.depth + 1):
        cols = k.columns(n)
        if any(h < 1 for h in k.heights[n]):
            problems.append(f"BASE: level {n} has a non-positive height")
        for i, i2 in k.transitions[n]:
            if not (0 <= i < cols and 0 <= i2 < cols):
                problems.append(f"BASE: level {n} transition {(i, i2)} out of range")
        if {i for i, _ in k.transitions[n]} != set(range(cols)) or \
                {i2 for _, i2 in k.transitions[n]} != set(range(cols)):
            problems.append(f"BASE: level {n} has a column without successor or predecessor")
    for n in range(1, k.depth + 1):
        low_h, trans_low = k.heights[n - 1], k.transitions[n - 1]
        amap = k.atom_maps[n - 1]
        if len(amap) != k.columns(n):
            problems.append(f"KR2: level {n} atom map covers {len(amap)} of {k.columns(n)} columns")
            continue
        for i, col in enumerate(amap):
            if len(col) != k.heights[n][i]:
                problems.append(f"KR2: level {n} column {i} has height {k.heights[n][i]} "
                                f"but {len(col)} mapped atoms")
                continue
            if any(not (0 <= c < len(low_h) and 0 <= j < low_h[c]) for c, j in col):
                problems.append(f"KR2: level {n} column {i} maps outside level {n - 1}")
                continue
            if col[0][1] != 0:
                problems.append(f"KR1: level {n} base {i} lies in {col[0]}, not in a level-{n - 1} base")
            for (c, j), (c2, j2) in zip(col, col[1:]):
                ok = (c2, j2) == (c, j + 1) if j + 1 < low_h[c] else (j2 == 0 and (c, c2) in trans_low)
                if not ok:
                    problems.append(f"KR2: level {n} column {i} steps {(c, j)} -> {(c2, j2)}")
            c, j = col[-1]
            if j != low_h[c] - 1:
                problems.append(f"KR2: level {n} column {i} ends inside level-{n - 1} column {c}")
            visited = {c for c, j in col if j == 0}
            missing = sorted(set(range(len(low_h))) - visited)
            if missing:
                problems.append(f"KR5: level {n} column {i} never meets level-{n - 1} columns {missing}")
            if k.require_kr6 and col[0] != (0, 0):
                problems.append(f"KR6: level {n} base {i} is not inside B_1({n - 1})")
        for i, i2 in k.transitions[n]:
            if i < len(amap) and i2 < len(amap) and amap[i] and amap[i2]:
                pair = (amap[i][-1][0], amap[i2][0][0])
                if pair not in trans_low or amap[i2][0][1] != 0:
                    problems.append(f"ARROWS: level {n} transition {(i, i2)} has no level-{n - 1} arrow")
    return ValidationReport(tuple(problems))


def _atom(i: int, j: int) -> str:
    return f"{i}.{j}"


def _kr_graph(heights, transitions) -> tuple[DiGraph, dict]:
    arrows, index = [], {}
    for i, h in enumerate(heights):
        for j in range(h - 1):
            index[("up", i, j)] = len(arrows)
            arrows.append(Arrow(_atom(i, j), _atom(i, j + 1), 1, None))
    for i, i2 in sorted(transitions):
        index[("back", i, i2)] = len(arrows)
        arrows.append(Arrow(_atom(i, heights[i] - 1), _atom(i2, 0), 1, None))
    vertices = [_atom(i, j) for i, h in enumerate(heights) for j in range(h)]
    return DiGraph(vertices, arrows), index


def kr_to_cover(k: KRTower, strict: bool = True) -> CoverTower:
    """Atoms become vertices, ``T`` between atoms becomes arrows, inclusion of
    atoms becomes the bonding map.

    ``strict=False`` tolerates KR5 and KR6 violations (the cover is still well
    defined, only minimality and directionality guarantees are lost).
    """
    report = validate_kr(k)
    fatal = [p for p in report.problems
             if strict or not p.startswith(("KR5", "KR6"))]
    if fatal:
        raise KRInvalid(sorted({p.split(":")[0] for p in fatal}))
    graphs = [_kr_graph(k.heights[n], k.transitions[n]) for n in range(k.depth + 1)]
    bondings = []
    for n in range(1, k.depth + 1):
        g, _ = graphs[n]
        _, low_index = graphs[n - 1]
        amap = k.atom_maps[n - 1]
        low_h = k.heights[n - 1]
        images = []
        for a in g.arrows:
            i, j = map(int, a.source.split("."))
            i2, j2 = map(int, a.target.split("."))
            c, cj = amap[i][j]
            c2, _ = amap[i2][j2]
            key = ("up", c, cj) if cj + 1 < low_h[c] else ("back", c, c2)
            images.append((low_index[key],))
        bondings.append(images)
    return CoverTower([g for g, _ in graphs], bondings)


def kr_column_matrix(k: KRTower, n: int) -> np.ndarray:
    """Rows level-``n`` columns, columns level-``(n-1)`` columns; entry counts
    how often column ``i`` passes through the base of column ``c``."""
    m = np.zeros((k.columns(n), k.columns(n - 1)), dtype=object)
    for i, col in enumerate(k.atom_maps[n - 1]):
        for c, j in col:
            if j == 0:
                m[i, c] += 1
    return m


def substitution_kr_tower(images: Sequence[str], letters: Sequence[str], depth: int,
                          require_kr6: bool = True) -> KRTower:
    """Stationary KR data of a primitive substitution read through its fixed point.

    Level ``n >= 1`` has one column per letter, decomposed along the image of
    that letter; transitions are the two-letter factors ``pairs`` of the fixed
    point.  Level 1 columns run through the single level-0 atom.
    """
    letters = list(letters)
    pos = {a: i for i, a in enumerate(letters)}
    images = [[pos[b] for b in img] for img in images]
    # two-letter factors of the fixed point, closed under the substitution
    pairs = {(img[r], img[r + 1]) for img in images for r in range(len(img) - 1)}
    while True:
        new = pairs | {(images[a][-1], images[b][0]) for a, b in pairs}
        if new == pairs:
            break
        pairs = new
    heights = [(1,), tuple(len(img) for img in images)]
    decompositions = [[[0] * len(img) for img in images]]
    for _ in range(2, depth + 1):
        h = heights[-1]
        heights.append(tuple(sum(h[c] for c in img) for img in images))
        decompositions.append([list(img) for img in images])
    transitions = [{(0, 0)}] + [pairs] * depth
    return KRTower.from_decompositions(heights[:depth + 1], transitions, decompositions[:depth],
                                       require_kr6)
