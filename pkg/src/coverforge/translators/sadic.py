"""Substitutions, S-adic systems and their single-vertex graph covers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..digraph import Arrow, DiGraph
from ..errors import NotSingleVertex
from ..tower import CoverTower, with_consistent_weights

VERTEX = "ε"


@dataclass(frozen=True)
class Substitution:
    """Map from ``source`` letters to nonempty words over ``target``.

    Letters are strings; images are tuples of letters so multi-character
    letters are allowed.
    """
    source: tuple[str, ...]
    target: tuple[str, ...]
    images: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise ValueError("one image per source letter required")
        if len(set(self.source)) != len(self.source) or len(set(self.target)) != len(self.target):
            raise ValueError("alphabets must not repeat letters")
        tset = set(self.target)
        for a, img in zip(self.source, self.images):
            if not img:
                raise ValueError(f"image of {a!r} is empty")
            bad = [b for b in img if b not in tset]
            if bad:
                raise ValueError(f"image of {a!r} uses letters {bad} outside the target alphabet")

    @classmethod
    def from_dict(cls, rules: Mapping[str, Sequence[str] | str], target=None):
        """``{"0": "01", "1": "0"}``; string images are split into characters."""
        source = tuple(rules)
        images = tuple(tuple(img) for img in rules.values())
        if target is None:
            letters = dict.fromkeys(source)
            for img in images:
                letters.update(dict.fromkeys(img))
            target = tuple(letters)
        return cls(source, tuple(target), images)

    def __getitem__(self, letter: str) -> tuple[str, ...]:
        return self.images[self.source.index(letter)]

    def as_dict(self) -> dict:
        return dict(zip(self.source, self.images))

    def apply(self, word: Sequence[str]) -> tuple[str, ...]:
        table = self.as_dict()
        out = []
        for a in word:
            out.extend(table[a])
        return tuple(out)

    def matrix(self) -> np.ndarray:
        """Associated matrix: rows source letters, columns target letters."""
        col = {b: j for j, b in enumerate(self.target)}
        m = np.zeros((len(self.source), len(self.target)), dtype=object)
        for i, img in enumerate(self.images):
            for b in img:
                m[i, col[b]] += 1
        return m

    def __str__(self):
        return ", ".join(f"{a}->{''.join(img)}" for a, img in zip(self.source, self.images))


@dataclass(frozen=True)
class SAdicSystem:
    """``substitutions[n-1]`` maps level-``n`` letters to level-``n-1`` words."""
    substitutions: tuple[Substitution, ...]

    def __post_init__(self):
        object.__setattr__(self, "substitutions", tuple(self.substitutions))
        for n, (lo, hi) in enumerate(zip(self.substitutions, self.substitutions[1:]), start=2):
            if set(hi.target) != set(lo.source):
                raise ValueError(f"alphabets do not match between substitutions {n - 1} and {n}")

    @classmethod
    def stationary(cls, sub: Substitution, depth: int):
        return cls((sub,) * depth)

    @property
    def base_alphabet(self) -> tuple[str, ...]:
        return self.substitutions[0].target

    def alphabet(self, n: int) -> tuple[str, ...]:
        return self.base_alphabet if n == 0 else self.substitutions[n - 1].source


def _loops(alphabet, weights=None):
    return DiGraph([VERTEX], [Arrow(VERTEX, VERTEX, 1 if weights is None else weights[i], a)
                              for i, a in enumerate(alphabet)])


def sadic_to_cover(s: SAdicSystem) -> CoverTower:
    """One vertex per level, one loop per letter; loop ``a`` wraps along ``chi_n(a)``."""
    levels = [_loops(s.base_alphabet)]
    bondings = []
    for sub in s.substitutions:
        lower = {a: i for i, a in enumerate(levels[-1].arrows[k].label
                                            for k in range(len(levels[-1].arrows)))}
        bondings.append([tuple(lower[b] for b in img) for img in sub.images])
        levels.append(_loops(sub.source))
    return with_consistent_weights(CoverTower(levels, bondings))


def cover_to_sadic(t: CoverTower) -> SAdicSystem:
    """Read the substitutions off a tower whose levels are single vertices."""
    for n, g in enumerate(t.levels):
        if len(g.vertices) != 1:
            raise NotSingleVertex(f"level {n} has {len(g.vertices)} vertices")
    subs = []
    for n in range(1, t.depth + 1):
        lo, hi = t.levels[n - 1], t.levels[n]
        subs.append(Substitution(
            tuple(hi.label(i) for i in range(len(hi.arrows))),
            tuple(lo.label(i) for i in range(len(lo.arrows))),
            tuple(tuple(lo.label(b) for b in img) for img in t.bondings[n - 1])))
    return SAdicSystem(tuple(subs))
