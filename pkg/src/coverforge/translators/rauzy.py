"""Rauzy-graph towers built from per-length factor sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..digraph import Arrow, DiGraph, special_vertices
from ..errors import NotSturmianShape, OracleInconsistent
from ..tower import CoverTower

EMPTY = "ε"


@dataclass(frozen=True)
class LanguageOracle:
    """``words[n]`` is the set of admitted words of length ``n`` (``n <= n_max``)."""
    words: tuple[frozenset, ...]

    @classmethod
    def from_sets(cls, sets: Mapping[int, Iterable[str]] | Iterable[Iterable[str]]):
        if isinstance(sets, Mapping):
            sets = [sets[n] for n in range(max(sets) + 1)]
        return cls(tuple(frozenset(s) for s in sets))

    @classmethod
    def from_word(cls, word: str, n_max: int):
        """Factor sets of a finite word (its language restricted to ``n_max``)."""
        return cls(tuple(frozenset(word[i:i + n] for i in range(len(word) - n + 1))
                         for n in range(n_max + 1)))

    @property
    def n_max(self) -> int:
        return len(self.words) - 1

    def __getitem__(self, n: int) -> frozenset:
        return self.words[n]

    def problems(self, upto: int | None = None) -> list[str]:
        upto = self.n_max if upto is None else upto
        out = []
        if self.words[0] != frozenset({""}):
            out.append("L_0 must be {''}")
        for n in range(1, upto + 1):
            for u in self.words[n]:
                if len(u) != n:
                    out.append(f"word {u!r} listed under length {n}")
                elif u[1:] not in self.words[n - 1] or u[:-1] not in self.words[n - 1]:
                    out.append(f"{u!r}: factor of length {n - 1} missing")
        for n in range(upto):
            right = {u[:-1] for u in self.words[n + 1]}
            left = {u[1:] for u in self.words[n + 1]}
            for u in self.words[n]:
                if u not in right:
                    out.append(f"{u!r} has no right extension")
                if u not in left:
                    out.append(f"{u!r} has no left extension")
        return out


def _vid(word: str) -> str:
    return word if word else EMPTY


def rauzy_graph(oracle: LanguageOracle, n: int) -> DiGraph:
    """Vertices ``L_n``; one arrow ``u[:-1] -> u[1:]`` per ``u`` in ``L_{n+1}``."""
    vertices = [_vid(u) for u in sorted(oracle[n])]
    arrows = [Arrow(_vid(u[:-1]), _vid(u[1:]), 1, u) for u in sorted(oracle[n + 1])]
    return DiGraph(vertices, arrows)


def rauzy_tower(oracle: LanguageOracle, depth: int) -> CoverTower:
    """Rauzy graphs ``G_0..G_depth`` bonded by deleting the last letter."""
    if depth + 1 > oracle.n_max:
        raise OracleInconsistent(f"oracle stops at length {oracle.n_max}, "
                                 f"depth {depth} needs length {depth + 1}")
    bad = oracle.problems(depth + 1)
    if bad:
        raise OracleInconsistent("; ".join(bad[:5]))
    levels = [rauzy_graph(oracle, n) for n in range(depth + 1)]
    bondings = []
    for n in range(1, depth + 1):
        index = levels[n - 1].label_index
        bondings.append([(index[a.label[:-1]],) for a in levels[n].arrows])
    return CoverTower(levels, bondings)


def _sturmian_shape(g: DiGraph):
    """Return ('bispecial', loops) or ('separate-specials', middle, loops).

    Lengths are arrow counts; ``loops`` is the sorted pair of path lengths
    from the right-special vertex back to the left-special one.
    """
    left, right, bi = special_vertices(g)
    if len(left) != 1 or len(right) != 1 or len(g.arrows) != len(g.vertices) + 1:
        raise NotSturmianShape(f"special counts {(len(left), len(right), len(bi))} "
                               f"with {len(g.vertices)} vertices / {len(g.arrows)} arrows")
    ls, rs = left[0], right[0]
    if any(len(g.in_arrows[v]) > 2 or len(g.out_arrows[v]) > 2 for v in g.vertices):
        raise NotSturmianShape("vertex of degree above two")

    def walk(i, stop):
        n = 1
        v = g.arrows[i].target
        while v != stop:
            outs = g.out_arrows[v]
            if len(outs) != 1:
                raise NotSturmianShape("branching inside a path")
            v = g.arrows[outs[0]].target
            n += 1
        return n

    loops = tuple(sorted(walk(i, ls) for i in g.out_arrows[rs]))
    if bi:
        return ("bispecial", loops)
    middle = walk(g.out_arrows[ls][0], rs)
    return ("separate-specials", middle, loops)


def classify_sturmian_level(g: DiGraph, next_level: DiGraph | None = None) -> str:
    """Tag a Sturmian Rauzy graph as ``"bispecial"`` or ``"separate-specials"``.

    With ``next_level`` the shape change is checked: a separate-specials graph
    loses one arrow on its middle path while both return paths gain one (a
    one-arrow middle path closes up into a bispecial vertex); a bispecial graph
    turns one loop into the middle path, one arrow shorter, while the other
    loop gains an arrow and a one-arrow return path appears.
    """
    shape = _sturmian_shape(g)
    if next_level is not None:
        nxt = _sturmian_shape(next_level)
        if shape[0] == "separate-specials":
            _, middle, loops = shape
            if middle == 1:
                expected = ("bispecial", tuple(sorted(l + 1 for l in loops)))
            else:
                expected = ("separate-specials", middle - 1, tuple(sorted(l + 1 for l in loops)))
            ok = nxt == expected
        else:
            p, q = shape[1]
            options = []
            for a, b in ((p, q), (q, p)):
                if a == 1:
                    options.append(("bispecial", (1, b + 1)))
                else:
                    options.append(("separate-specials", a - 1, tuple(sorted((1, b + 1)))))
            ok = nxt in options
        if not ok:
            raise NotSturmianShape(f"transition {shape} -> {nxt} breaks the Sturmian rule")
    return shape[0]
