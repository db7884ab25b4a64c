"""Dynamical criteria evaluated on finite truncations of a graph cover.

Every semi-infinite statement is answered with a ``Verdict``: verified with a
witness level, refuted with a finite counterexample, or not decided up to the
tower depth.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import gcd, log
from typing import Sequence

import numpy as np

from .digraph import (DiGraph, enumerate_closed_walks, enumerate_simple_cycles,
                      is_strongly_connected, shortest_path, special_vertices,
                      strongly_connected_components)
from .dynamics import minimal_thread, step
from .errors import (AlphabetTooLarge, DegenerateCone, FactorTooRare, IndeterminateAtDepth,
                     NotTelescopable)
from .tower import CoverTower, select_levels, telescoped_winding, winding_matrix

VERIFIED, REFUTED, UNDECIDED = "verified", "refuted", "not-decided"


def default_budget() -> int:
    return int(os.environ.get("COVERFORGE_BUDGET", "10000"))


@dataclass(frozen=True)
class Verdict:
    status: str
    level: int | None = None
    witness: object = None
    details: str = ""

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def undecided(self) -> bool:
        return self.status == UNDECIDED

    @property
    def exit_code(self) -> int:
        return {VERIFIED: 0, REFUTED: 1, UNDECIDED: 2}[self.status]

    def __str__(self):
        head = {VERIFIED: f"Verified({self.level})", REFUTED: f"Refuted(level {self.level})",
                UNDECIDED: f"NotDecidedUpTo({self.level})"}[self.status]
        return f"{head}: {self.details}" if self.details else head


def Verified(level, witness=None, details=""):
    return Verdict(VERIFIED, level, witness, details)


def Refuted(level, witness=None, details=""):
    return Verdict(REFUTED, level, witness, details)


def NotDecidedUpTo(depth, witness=None, details=""):
    return Verdict(UNDECIDED, depth, witness, details)


# ---------------------------------------------------------------- chain transitivity

def check_chain_transitive(t: CoverTower) -> Verdict:
    for n, g in enumerate(t.levels):
        if not is_strongly_connected(g):
            comps = strongly_connected_components(g)
            return Refuted(n, comps, f"level {n} splits into {len(comps)} strongly connected components")
    return Verified(t.depth, None, f"levels 0..{t.depth} are strongly connected")


# ---------------------------------------------------------------- minimality

def _image_set(t: CoverTower, m: int, n: int, path) -> set:
    out = set()
    for a in path:
        out.update(t.telescoped_image(m, n, a))
    return out


def is_stationary(t: CoverTower) -> bool:
    """Levels share one arrow structure and all bondings coincide."""
    def shape(g):
        return g.vertices, tuple((a.source, a.target) for a in g.arrows)
    return t.depth >= 1 and len({shape(g) for g in t.levels}) == 1 and len(set(t.bondings)) == 1


def _closure(bonding, arrows) -> frozenset:
    seen = set(arrows)
    todo = list(seen)
    while todo:
        for b in bonding[todo.pop()]:
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return frozenset(seen)


def check_minimal(t: CoverTower, m: int = 0, max_cycles: int | None = None) -> Verdict:
    """Smallest ``n > m`` at which every simple cycle of ``G_n`` pushes down onto
    all arrows of ``G_m``.

    Every loop contains the arrows of some simple cycle, so checking simple
    cycles suffices.  Stationary towers are refuted when some simple cycle's
    arrow set is closed under the bonding map without being everything.
    """
    t._check_level(m)
    budget = default_budget() if max_cycles is None else max_cycles
    everything = set(range(len(t.levels[m].arrows)))
    for n in range(m + 1, t.depth + 1):
        cycles = enumerate_simple_cycles(t.levels[n], budget)
        if all(_image_set(t, m, n, c) >= everything for c in cycles):
            return Verified(n, {c: tuple(t.telescoped_path(m, n, c)) for c in cycles},
                            f"all {len(cycles)} simple cycles of level {n} cover level {m}")
    if is_stationary(t):
        bonding = t.bondings[0]
        for c in enumerate_simple_cycles(t.levels[0], budget):
            closed = _closure(bonding, c)
            if len(closed) < len(bonding):
                return Refuted(m, {"cycle": c, "closure": tuple(sorted(closed))},
                               f"cycle {c} only ever covers arrows {sorted(closed)}")
    return NotDecidedUpTo(t.depth)


# ---------------------------------------------------------------- transitivity

def _contains(path: Sequence[int], part: Sequence[int]) -> bool:
    k = len(part)
    return any(tuple(path[i:i + k]) == tuple(part) for i in range(len(path) - k + 1))


def _close_up(g: DiGraph, path: Sequence[int]) -> tuple[int, ...] | None:
    back = shortest_path(g, g.target(path[-1]), g.source(path[0]))
    return None if back is None else tuple(path) + back


def _lift_arrow_set(t: CoverTower, m: int, n: int, loop) -> tuple[int, ...] | None:
    g = t.levels[n]
    chosen = []
    for b in dict.fromkeys(loop):
        if not any(b in t.telescoped_image(m, n, a) for a in chosen):
            a = next(a for a in range(len(g.arrows)) if b in t.telescoped_image(m, n, a))
            chosen.append(a)
    walk = [chosen[0]]
    for a in chosen[1:]:
        link = shortest_path(g, g.target(walk[-1]), g.source(a))
        if link is None:
            return None
        walk += list(link) + [a]
    return _close_up(g, walk)


def _lift_subpath(t: CoverTower, m: int, n: int, loop, max_len: int, budget: int):
    g = t.levels[n]
    frontier = [(a,) for a in range(len(g.arrows))]
    count = 0
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            if _contains(t.telescoped_path(m, n, p), loop):
                closed = _close_up(g, p)
                if closed is not None:
                    return closed
            for a in g.out_arrows[g.target(p[-1])]:
                nxt.append(p + (a,))
                count += 1
                if count > budget:
                    return None
        frontier = nxt
    return None


def check_transitive(t: CoverTower, m: int, loop_length_bound: int, mode: str = "arrow-set",
                     max_loops: int | None = None) -> Verdict:
    """Smallest ``n > m`` such that every loop of ``G_m`` up to the length bound
    lies in the image of some loop of ``G_n``.

    ``mode="arrow-set"`` reads containment as arrow-set inclusion;
    ``mode="subpath"`` demands the loop as a contiguous piece of the image.
    """
    if mode not in ("arrow-set", "subpath"):
        raise ValueError(f"unknown mode {mode!r}")
    chain = check_chain_transitive(t)
    if not chain.verified:
        return Refuted(chain.level, chain.witness, "not chain transitive: " + chain.details)
    budget = default_budget() if max_loops is None else max_loops
    loops = enumerate_closed_walks(t.levels[m], loop_length_bound, budget)
    for n in range(m + 1, t.depth + 1):
        witnesses = {}
        for loop in loops:
            if mode == "arrow-set":
                lifted = _lift_arrow_set(t, m, n, loop)
            else:
                lifted = _lift_subpath(t, m, n, loop, len(loop) + 1, budget)
            if lifted is None:
                break
            witnesses[loop] = lifted
        else:
            return Verified(n, witnesses, f"{len(loops)} loops of level {m} lift to level {n}")
    return NotDecidedUpTo(t.depth)


# ---------------------------------------------------------------- unique ergodicity

@dataclass(frozen=True)
class ConeDiameter:
    level: int
    ratio: Fraction | None  # cross-ratio bound; None stands for infinity

    @property
    def diameter(self) -> float:
        return float("inf") if self.ratio is None else log(self.ratio)

    def _exp(self, threshold) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = 80
            return Decimal(str(threshold)).exp()

    def below(self, threshold) -> bool:
        """Exact test ``log(ratio) < threshold``."""
        if self.ratio is None:
            return False
        with localcontext() as ctx:
            ctx.prec = 80
            return Decimal(self.ratio.numerator) / Decimal(self.ratio.denominator) < self._exp(threshold)

    def above(self, threshold) -> bool:
        """Exact test ``log(ratio) > threshold``."""
        if self.ratio is None:
            return True
        with localcontext() as ctx:
            ctx.prec = 80
            return Decimal(self.ratio.numerator) / Decimal(self.ratio.denominator) > self._exp(threshold)


def hilbert_cross_ratio(rows) -> Fraction | None:
    """Largest ``max_i x_i/y_i * max_j y_j/x_j`` over pairs of rows; ``None`` if
    any entry is zero."""
    rows = [list(r) for r in rows]
    if any(x == 0 for r in rows for x in r):
        return None
    best = Fraction(1)
    for k, x in enumerate(rows):
        for y in rows[k + 1:]:
            r = max(Fraction(a, b) for a, b in zip(x, y)) * max(Fraction(b, a) for a, b in zip(x, y))
            best = max(best, r)
    return best


def unique_ergodicity_diameters(t: CoverTower, base: int = 0) -> list[ConeDiameter]:
    """Projective diameters of the cones spanned by the rows of
    ``W^m ... W^{base+1}`` for ``m = base+1..N`` (non-increasing in ``m``)."""
    t._check_level(base)
    out = []
    for m in range(base + 1, t.depth + 1):
        a = telescoped_winding(t, base, m)
        if any(not any(a[:, j]) for j in range(a.shape[1])) or any(not any(r) for r in a):
            raise DegenerateCone(f"telescoped matrix {base}->{m} has a zero row or column")
        out.append(ConeDiameter(m, hilbert_cross_ratio(a.tolist())))
    return out


# ---------------------------------------------------------------- special vertices

@dataclass(frozen=True)
class SpecialCounts:
    left: int
    right: int
    bispecial: int


def special_vertex_counts(g: DiGraph) -> SpecialCounts:
    left, right, bi = special_vertices(g)
    return SpecialCounts(len(left), len(right), len(bi))


def measure_value_bound(g: DiGraph) -> int:
    c = special_vertex_counts(g)
    return 3 * (c.right + c.bispecial)


def ergodic_count_bound(t: CoverTower) -> int:
    """``min_n (r_n + b_n) + 1`` over the levels of a two-letter Rauzy tower."""
    if len(t.levels[0].arrows) > 2:
        raise AlphabetTooLarge(f"{len(t.levels[0].arrows)} letters; the bound is for two")
    counts = [special_vertex_counts(g) for g in t.levels]
    return min(c.right + c.bispecial for c in counts) + 1


# ---------------------------------------------------------------- uniform rigidity

def _periodic_projection(t: CoverTower, n: int):
    """Loop ``C_n`` and phases for level-``n+1`` arrows, or ``None``.

    Every walk of ``G_{n+1}`` projects to a ``C_n``-periodic arrow sequence
    when each arrow ``a`` starts at phase ``p(s(a))`` and
    ``pi(a) = C_n[p(s(a)) : p(s(a)) + |pi(a)|]`` cyclically.  The smallest
    working period gives the primitive loop.
    """
    g = t.levels[n + 1]
    images = t.bondings[n]
    pot = {g.vertices[0]: 0}
    todo = [g.vertices[0]]
    while todo:
        v = todo.pop()
        for i in g.out_arrows[v] + g.in_arrows[v]:
            a = g.arrows[i]
            if a.source == v and a.target not in pot:
                pot[a.target] = pot[v] + len(images[i])
                todo.append(a.target)
            elif a.target == v and a.source not in pot:
                pot[a.source] = pot[v] - len(images[i])
                todo.append(a.source)
    if len(pot) != len(g.vertices):
        return None
    period = 0
    for i, a in enumerate(g.arrows):
        period = gcd(period, abs(pot[a.source] + len(images[i]) - pot[a.target]))
    if period == 0:
        return None
    for p in (d for d in range(1, period + 1) if period % d == 0):
        loop: list = [None] * p
        ok = True
        for i, a in enumerate(g.arrows):
            start = pot[a.source] % p
            for k, b in enumerate(images[i]):
                slot = (start + k) % p
                if loop[slot] is None:
                    loop[slot] = b
                elif loop[slot] != b:
                    ok = False
                    break
            if not ok:
                break
        if ok and None not in loop and set(loop) == set(range(len(t.levels[n].arrows))):
            return tuple(loop), {i: pot[a.source] % p for i, a in enumerate(g.arrows)}
    return None


@dataclass(frozen=True)
class RigidityWitness:
    loops: tuple[tuple[int, ...], ...]  # C_0 .. C_{N-1}
    q: tuple[int, ...]  # q_n with pi(C_{n+1}) = C_n^{q_n}
    periods: tuple[int, ...]  # number of unit steps around C_n


def uniform_rigidity_check(t: CoverTower) -> Verdict:
    """Look for covering loops ``C_n`` that every orbit follows periodically.

    Level ``n < N`` is checked through all walks of ``G_{n+1}``; the top level
    has nothing above it, so a verified tower is reported at level ``N - 1``.
    """
    chain = check_chain_transitive(t)
    if not chain.verified:
        return Refuted(chain.level, None, "not chain transitive")
    loops = []
    for n in range(t.depth):
        found = _periodic_projection(t, n)
        if found is None:
            return NotDecidedUpTo(t.depth, None, f"no periodic covering loop at level {n}")
        loops.append(found[0])
    q = []
    for n in range(len(loops) - 1):
        image = t.telescoped_path(n, n + 1, loops[n + 1])
        if len(image) % len(loops[n]):
            return NotDecidedUpTo(t.depth, None, f"loop {n + 1} does not wrap evenly onto loop {n}")
        q.append(len(image) // len(loops[n]))
    periods = tuple(t.levels[n].path_weight(c) for n, c in enumerate(loops))
    return Verified(t.depth - 1, RigidityWitness(tuple(loops), tuple(q), periods),
                    f"q = {tuple(q)}")


# ---------------------------------------------------------------- linear recurrence

@dataclass(frozen=True)
class RecurrenceConstants:
    K1: int
    K2: int
    D: int
    L: Fraction
    telescoping: tuple[int, ...]  # levels kept so images cover the level below

    @property
    def K(self) -> Fraction:
        return Fraction(self.K1, self.K2)


def covering_levels(t: CoverTower) -> tuple[int, ...]:
    """Greedy level selection ``0 = k_0 < k_1 < ...`` with every image of a
    ``k_{i+1}`` arrow covering all arrows of ``k_i``."""
    keep = [0]
    n = 1
    while n <= t.depth:
        m = keep[-1]
        need = set(range(len(t.levels[m].arrows)))
        if all(set(t.telescoped_image(m, n, a)) >= need for a in range(len(t.levels[n].arrows))):
            keep.append(n)
        n += 1
    if len(keep) < 2:
        raise NotTelescopable("no level covers level 0 under every arrow image")
    return tuple(keep)


def _entries(seq_arrows, seq_offsets):
    return [a for a, o in zip(seq_arrows, seq_offsets) if o == 0]


def sampled_gap_size(footprints: Sequence[tuple[int, int]]) -> int:
    """Largest recurrence gap of consecutive arrow pairs in an entry sequence,
    skipping the first pair and pairs with no later occurrence in the sample."""
    entries = [a for a, o in footprints if o == 0]
    last: dict = {}
    gaps = [0]
    for j in range(len(entries) - 2, 0, -1):
        pair = (entries[j], entries[j + 1])
        if pair in last:
            gaps.append(last[pair] - j)
        last[pair] = j
    return max(gaps)


def linear_recurrence_constants(t: CoverTower, orbit_length: int, depth_cap: int) -> RecurrenceConstants:
    """``K1``/``K2`` from column sums of the winding matrices, ``D`` sampled
    from an orbit of the minimal thread (stopped early once the thread no
    longer reaches ``depth_cap``), ``L = D K^2 max_n min_c colsum(W^n)``
    with ``K = K1/K2``."""
    telescoping = covering_levels(t)
    sums = []
    for n in range(1, t.depth + 1):
        sums.append([int(s) for s in winding_matrix(t, n).sum(axis=0)])
    k1 = max(max(s) for s in sums)
    k2 = min(min(s) for s in sums)
    depth_cap = min(depth_cap, t.depth)
    x = minimal_thread(t)
    tracks = [[] for _ in range(depth_cap + 1)]
    for _ in range(orbit_length):
        for m in range(depth_cap + 1):
            tracks[m].append(x.footprint(m))
        try:
            x = step(t, x, truncate=True)
        except IndeterminateAtDepth:
            break
        if x.height < depth_cap:
            break
    d = max(sampled_gap_size(tr) for tr in tracks)
    k = Fraction(k1, k2)
    big = max(min(s) for s in sums)
    return RecurrenceConstants(k1, k2, d, d * k * k * big, telescoping)


def return_words(word: Sequence, u: Sequence) -> set:
    """Words ``w`` with ``wu`` spanning two consecutive occurrences of ``u``."""
    word, u = "".join(word) if not isinstance(word, str) else word, \
        "".join(u) if not isinstance(u, str) else u
    pos = [i for i in range(len(word) - len(u) + 1) if word.startswith(u, i)]
    if len(pos) < 2:
        raise FactorTooRare(f"{u!r} occurs {len(pos)} time(s)")
    return {word[p:q] for p, q in zip(pos, pos[1:])}
