"""Plain-text documents for towers, diagrams, substitution sequences, KR data
and language oracles, plus DOT export.

Every document starts with ``coverforge <kind> 1``; blank lines and lines
starting with ``#`` are ignored.  Names are whitespace-free tokens and the
empty word is written ``ε``.
"""
from __future__ import annotations

from typing import Iterator

from .digraph import Arrow, DiGraph
from .errors import ParseError
from .tower import CoverTower
from .translators.bratteli import BrattelliDiagram, BVEdge
from .translators.kakutani import KRTower
from .translators.rauzy import EMPTY, LanguageOracle
from .translators.sadic import SAdicSystem, Substitution

VERSION = "1"
NO_LABEL = "-"


def _token(name) -> str:
    s = str(name)
    if not s or any(c.isspace() for c in s):
        raise ValueError(f"name {s!r} is empty or contains whitespace")
    return s


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


class _Reader:
    def __init__(self, text: str, kind: str):
        self.items = list(_lines(text))
        self.pos = 0
        no, head = self.next("header")
        if head != ["coverforge", kind, VERSION]:
            raise ParseError(no, f"expected header 'coverforge {kind} {VERSION}'")

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self, what: str):
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 0
            raise ParseError(last + 1, f"unexpected end of document, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, key: str, nargs: int | None = None):
        no, words = self.next(key)
        if words[0] != key or (nargs is not None and len(words) != nargs + 1):
            want = key if nargs is None else f"{key} with {nargs} value(s)"
            raise ParseError(no, f"expected {want}, got {' '.join(words)!r}")
        return no, words[1:]

    def done(self):
        no, words = self.peek()
        if no is not None:
            raise ParseError(no, f"unexpected line {' '.join(words)!r}")


def _int(no: int, s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ParseError(no, f"{what} must be an integer, got {s!r}") from None


def _flag(no: int, s: str) -> bool:
    if s not in ("yes", "no"):
        raise ParseError(no, f"flag must be yes or no, got {s!r}")
    return s == "yes"


# ---------------------------------------------------------------- towers

def print_tower(t: CoverTower) -> str:
    weighted = any(a.weight != 1 for g in t.levels for a in g.arrows)
    out = [f"coverforge tower {VERSION}", f"depth {t.depth}",
           f"weighted {'yes' if weighted else 'no'}"]
    for n, g in enumerate(t.levels):
        out.append(f"level {n}")
        out += [f"vertex {_token(v)}" for v in g.vertices]
        for i, a in enumerate(g.arrows):
            label = NO_LABEL if a.label is None else _token(a.label)
            out.append(f"arrow {i} {_token(a.source)} {_token(a.target)} {a.weight} {label}")
        if n:
            out.append(f"bonding {n}")
            out += [f"{i}: {' '.join(map(str, img))}" for i, img in enumerate(t.bondings[n - 1])]
    return "\n".join(out) + "\n"


def parse_tower(text: str) -> CoverTower:
    r = _Reader(text, "tower")
    no, (d,) = r.keyword("depth", 1)
    depth = _int(no, d, "depth")
    wno, (w,) = r.keyword("weighted", 1)
    weighted = _flag(wno, w)
    levels, bondings = [], []
    for n in range(depth + 1):
        no, (k,) = r.keyword("level", 1)
        if _int(no, k, "level") != n:
            raise ParseError(no, f"expected level {n}")
        vertices, arrows = [], []
        while r.peek()[1] and r.peek()[1][0] == "vertex":
            no, (v,) = r.keyword("vertex", 1)
            if v in vertices:
                raise ParseError(no, f"duplicate vertex {v!r}")
            vertices.append(v)
        while r.peek()[1] and r.peek()[1][0] == "arrow":
            no, (i, s, tg, wt, lab) = r.keyword("arrow", 5)
            if _int(no, i, "arrow id") != len(arrows):
                raise ParseError(no, f"arrow ids must run 0, 1, ...; expected {len(arrows)}")
            if s not in vertices or tg not in vertices:
                raise ParseError(no, "arrow endpoint is not a declared vertex")
            weight = _int(no, wt, "weight")
            if weight < 1 or (not weighted and weight != 1):
                raise ParseError(no, f"weight {weight} not allowed"
                                 + ("" if weighted else " in an unweighted document"))
            arrows.append(Arrow(s, tg, weight, None if lab == NO_LABEL else lab))
        if not vertices or not arrows:
            raise ParseError(no, f"level {n} needs vertices and arrows")
        levels.append(DiGraph(vertices, arrows))
        if n:
            no, (k,) = r.keyword("bonding", 1)
            if _int(no, k, "bonding") != n:
                raise ParseError(no, f"expected bonding {n}")
            images = []
            for i in range(len(arrows)):
                no, words = r.next(f"image of arrow {i}")
                if words[0] != f"{i}:" or len(words) < 2:
                    raise ParseError(no, f"expected '{i}: <image arrow ids>'")
                img = tuple(_int(no, x, "image arrow id") for x in words[1:])
                if any(not 0 <= b < len(levels[n - 1].arrows) for b in img):
                    raise ParseError(no, f"image {img} leaves level {n - 1}")
                images.append(img)
            bondings.append(images)
    r.done()
    return CoverTower(levels, bondings)


# ---------------------------------------------------------------- diagrams

def print_diagram(d: BrattelliDiagram) -> str:
    out = [f"coverforge diagram {VERSION}", f"depth {d.depth}"]
    for i, vs in enumerate(d.vertices):
        out.append(f"level {i}")
        out += [f"vertex {_token(v)}" for v in vs]
        if i:
            out += [f"edge {e.source} {e.target} {e.rank}" for e in d.edges[i - 1]]
    return "\n".join(out) + "\n"


def parse_diagram(text: str) -> BrattelliDiagram:
    r = _Reader(text, "diagram")
    no, (dd,) = r.keyword("depth", 1)
    depth = _int(no, dd, "depth")
    vertices, edges = [], []
    for i in range(depth + 1):
        no, (k,) = r.keyword("level", 1)
        if _int(no, k, "level") != i:
            raise ParseError(no, f"expected level {i}")
        vs, es = [], []
        while r.peek()[1] and r.peek()[1][0] == "vertex":
            no, (v,) = r.keyword("vertex", 1)
            vs.append(v)
        while i and r.peek()[1] and r.peek()[1][0] == "edge":
            no, (s, tg, rank) = r.keyword("edge", 3)
            if s not in vertices[-1] or tg not in vs:
                raise ParseError(no, f"edge {s} -> {tg} leaves levels {i - 1}, {i}")
            es.append(BVEdge(s, tg, _int(no, rank, "rank")))
        vertices.append(vs)
        if i:
            edges.append(es)
            for v in vs:
                ranks = sorted(e.rank for e in es if e.target == v)
                if ranks != list(range(len(ranks))) or not ranks:
                    raise ParseError(no, f"ranks into {v!r} are {ranks}, not 0..k-1")
    r.done()
    return BrattelliDiagram(vertices, edges)


# ---------------------------------------------------------------- substitution sequences

def print_sadic(s: SAdicSystem) -> str:
    out = [f"coverforge sadic {VERSION}", f"depth {len(s.substitutions)}"]
    for n, sub in enumerate(s.substitutions, start=1):
        out += [f"substitution {n}", "source " + " ".join(map(_token, sub.source)),
                "target " + " ".join(map(_token, sub.target))]
        out += [f"{a}: {' '.join(img)}" for a, img in zip(sub.source, sub.images)]
    return "\n".join(out) + "\n"


def parse_sadic(text: str) -> SAdicSystem:
    r = _Reader(text, "sadic")
    no, (d,) = r.keyword("depth", 1)
    subs = []
    for n in range(1, _int(no, d, "depth") + 1):
        no, (k,) = r.keyword("substitution", 1)
        if _int(no, k, "substitution") != n:
            raise ParseError(no, f"expected substitution {n}")
        _, source = r.keyword("source")
        tno, target = r.keyword("target")
        if subs and set(target) != set(subs[-1].source):
            raise ParseError(tno, "target alphabet differs from the previous source alphabet")
        images = []
        for a in source:
            no, words = r.next(f"image of {a}")
            if words[0] != f"{a}:" or len(words) < 2:
                raise ParseError(no, f"expected '{a}: <letters>'")
            images.append(tuple(words[1:]))
        try:
            subs.append(Substitution(tuple(source), tuple(target), tuple(images)))
        except ValueError as e:
            raise ParseError(no, str(e)) from None
    r.done()
    return SAdicSystem(tuple(subs))


# ---------------------------------------------------------------- KR data

def _atom(no: int, s: str) -> tuple[int, int]:
    parts = s.split(".")
    if len(parts) != 2:
        raise ParseError(no, f"atom must look like column.height, got {s!r}")
    return _int(no, parts[0], "column"), _int(no, parts[1], "height")


def print_kr(k: KRTower) -> str:
    out = [f"coverforge kr {VERSION}", f"depth {k.depth}",
           f"kr6 {'yes' if k.require_kr6 else 'no'}"]
    for n in range(k.depth + 1):
        out.append(f"level {n}")
        out.append("heights " + " ".join(map(str, k.heights[n])))
        out += [f"transition {i} {j}" for i, j in sorted(k.transitions[n])]
        if n:
            for i, col in enumerate(k.atom_maps[n - 1]):
                out.append(f"column {i}: " + " ".join(f"{c}.{j}" for c, j in col))
    return "\n".join(out) + "\n"


def parse_kr(text: str) -> KRTower:
    r = _Reader(text, "kr")
    no, (d,) = r.keyword("depth", 1)
    depth = _int(no, d, "depth")
    kno, (f,) = r.keyword("kr6", 1)
    heights, transitions, maps = [], [], []
    for n in range(depth + 1):
        no, (lv,) = r.keyword("level", 1)
        if _int(no, lv, "level") != n:
            raise ParseError(no, f"expected level {n}")
        no, hs = r.keyword("heights")
        heights.append(tuple(_int(no, h, "height") for h in hs))
        trans = set()
        while r.peek()[1] and r.peek()[1][0] == "transition":
            no, (i, j) = r.keyword("transition", 2)
            trans.add((_int(no, i, "column"), _int(no, j, "column")))
        transitions.append(trans)
        if n:
            cols = []
            for i in range(len(heights[-1])):
                no, words = r.next(f"column {i}")
                if words[:2] != ["column", f"{i}:"]:
                    raise ParseError(no, f"expected 'column {i}: <atoms>'")
                cols.append(tuple(_atom(no, w) for w in words[2:]))
            maps.append(tuple(cols))
    r.done()
    try:
        return KRTower(heights, transitions, maps, _flag(kno, f))
    except ValueError as e:
        raise ParseError(kno, str(e)) from None


# ---------------------------------------------------------------- language oracles

def print_language(o: LanguageOracle) -> str:
    out = [f"coverforge language {VERSION}", f"nmax {o.n_max}"]
    for n in range(o.n_max + 1):
        words = sorted(w if w else EMPTY for w in o[n])
        out.append(f"words {n}: " + " ".join(words))
    return "\n".join(out) + "\n"


def parse_language(text: str) -> LanguageOracle:
    r = _Reader(text, "language")
    no, (m,) = r.keyword("nmax", 1)
    sets = []
    for n in range(_int(no, m, "nmax") + 1):
        no, words = r.next(f"words {n}")
        if words[:2] != ["words", f"{n}:"]:
            raise ParseError(no, f"expected 'words {n}: ...'")
        sets.append({"" if w == EMPTY else w for w in words[2:]})
    r.done()
    return LanguageOracle.from_sets(sets)


PARSERS = {"tower": parse_tower, "diagram": parse_diagram, "sadic": parse_sadic,
           "kr": parse_kr, "language": parse_language}
PRINTERS = {CoverTower: print_tower, BrattelliDiagram: print_diagram, SAdicSystem: print_sadic,
            KRTower: print_kr, LanguageOracle: print_language}


def document_kind(text: str) -> str:
    for no, words in _lines(text):
        if len(words) == 3 and words[0] == "coverforge" and words[1] in PARSERS:
            return words[1]
        raise ParseError(no, "not a coverforge document")
    raise ParseError(1, "empty document")


def parse_document(text: str):
    return PARSERS[document_kind(text)](text)


def print_document(obj) -> str:
    return PRINTERS[type(obj)](obj)


# ---------------------------------------------------------------- DOT

def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_body(g: DiGraph, prefix: str, indent: str) -> list[str]:
    out = [f"{indent}{_q(prefix + str(v))} [label={_q(v)}];" for v in sorted(map(str, g.vertices))]
    for i, a in enumerate(g.arrows):
        label = g.label(i) if a.weight == 1 else f"{g.label(i)} ({a.weight})"
        out.append(f"{indent}{_q(prefix + str(a.source))} -> {_q(prefix + str(a.target))} "
                   f"[id={_q(f'{prefix}a{i}')}, label={_q(label)}];")
    return out


def to_dot(t: CoverTower, level: int | None = None) -> str:
    """One level as its own digraph, or every level as a cluster of one digraph.

    Vertices are emitted in sorted name order and arrows in id order.
    """
    if level is not None:
        t._check_level(level)
        return "\n".join([f"digraph G{level} {{"] + _dot_body(t.levels[level], "", "  ")
                         + ["}"]) + "\n"
    out = ["digraph tower {"]
    for n in range(t.depth, -1, -1):
        out.append(f"  subgraph cluster_{n} {{")
        out.append(f"    label={_q(f'G{n}')};")
        out += _dot_body(t.levels[n], f"{n}:", "    ")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
