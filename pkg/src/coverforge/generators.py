"""Towers, words, oracles and interval exchanges for the standard examples."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .digraph import Arrow, DiGraph
from .errors import (InvalidWindow, KeaneTie, NoGrowth, NotProlongable, PrefixTooShort,
                     ReduciblePermutation, ReturnTimeExceeded)
from .tower import CoverTower, with_consistent_weights
from .translators.rauzy import LanguageOracle
from .translators.sadic import VERTEX, SAdicSystem, Substitution


def _check_cf(cf: Sequence[int]) -> tuple[int, ...]:
    cf = tuple(int(a) for a in cf)
    if any(a < 1 for a in cf):
        raise ValueError("partial quotients must be positive integers")
    return cf


def convergent_denominators(cf: Sequence[int]) -> list[int]:
    """``q_0 = 1, q_1 = a_1, q_{k+1} = a_{k+1} q_k + q_{k-1}``."""
    cf = _check_cf(cf)
    qs, prev = [1], 0
    for a in cf:
        qs, prev = qs + [a * qs[-1] + prev], qs[-1]
    return qs


def _two_loops(weights=(1, 1)):
    return DiGraph([VERTEX], [Arrow(VERTEX, VERTEX, weights[0], "0"),
                              Arrow(VERTEX, VERTEX, weights[1], "1")])


def ostrowski_cover(cf: Sequence[int], depth: int) -> CoverTower:
    """Two loops per level: arrow 0 is gamma_n, arrow 1 is gamma'_n.

    ``pi(gamma_{n+1}) = gamma_n^{a_{n+1}} gamma'_n`` and ``pi(gamma'_{n+1}) = gamma_n``.
    Level 1 uses ``gamma_0^{a_1 - 1} gamma'_0`` so that ``w(gamma_1) = a_1`` while
    both base loops stay in use.
    """
    cf = _check_cf(cf)
    if depth > len(cf):
        raise ValueError(f"depth {depth} needs {depth} partial quotients, got {len(cf)}")
    levels = [_two_loops()]
    bondings = []
    for n in range(1, depth + 1):
        a = cf[n - 1]
        copies = a - 1 if n == 1 else a
        bondings.append([(0,) * copies + (1,), (0,)])
        levels.append(_two_loops())
    return with_consistent_weights(CoverTower(levels, bondings))


def odometer_cover(q: int | Sequence[int], depth: int) -> CoverTower:
    """Single loop per level wrapped ``q_n`` times around the loop below."""
    qs = [q] * depth if isinstance(q, int) else list(q)[:depth]
    if len(qs) < depth or any(x < 2 for x in qs):
        raise ValueError("need depth entries, each at least 2")
    loop = DiGraph([VERTEX], [Arrow(VERTEX, VERTEX, 1, "0")])
    return with_consistent_weights(CoverTower([loop] * (depth + 1), [[(0,) * x] for x in qs]))


def standard_words(cf: Sequence[int], k: int) -> list[str]:
    """``s_{-1}, s_0, ..., s_k`` with ``s_1 = s_0^{a_1-1} s_{-1}`` and
    ``s_{j+1} = s_j^{a_{j+1}} s_{j-1}``."""
    cf = _check_cf(cf)
    if k > len(cf):
        raise PrefixTooShort(f"s_{k} needs {k} partial quotients")
    words = ["1", "0"]
    for j in range(1, k + 1):
        a = cf[j - 1] - (1 if j == 1 else 0)
        words.append(words[-1] * a + words[-2])
    return words


def sturmian_word(cf: Sequence[int], length: int) -> str:
    """Prefix of the characteristic word, the limit of the standard words."""
    cf = _check_cf(cf)
    words = ["1", "0"]
    for j, a in enumerate(cf, start=1):
        words.append(words[-1] * (a - (1 if j == 1 else 0)) + words[-2])
        if j >= 2 and len(words[-1]) >= length:
            return words[-1][:length]
    raise PrefixTooShort(f"{len(cf)} partial quotients give only {len(words[-1])} symbols")


def sturmian_oracle(cf: Sequence[int], n_max: int) -> LanguageOracle:
    """Factor sets of the characteristic word up to length ``n_max``.

    Standard words are grown until one shows exactly ``n + 1`` factors of
    every length ``n <= n_max`` with extendable factor sets.
    """
    cf = _check_cf(cf)
    words = ["1", "0"]
    for j, a in enumerate(cf, start=1):
        words.append(words[-1] * (a - (1 if j == 1 else 0)) + words[-2])
        if len(words[-1]) < 2 * (n_max + 1):
            continue
        oracle = LanguageOracle.from_word(words[-1], n_max)
        if all(len(oracle[n]) == n + 1 for n in range(n_max + 1)) and not oracle.problems():
            return oracle
    raise PrefixTooShort(f"{len(cf)} partial quotients do not determine factors "
                         f"up to length {n_max}")


def full_shift_oracle(alphabet_size: int, n_max: int) -> LanguageOracle:
    if not 1 <= alphabet_size <= 10:
        raise ValueError("alphabet size must be between 1 and 10")
    letters = [str(i) for i in range(alphabet_size)]
    return LanguageOracle(tuple(frozenset("".join(p) for p in product(letters, repeat=n))
                                for n in range(n_max + 1)))


def substitution_fixed_point(s: Substitution, seed: str, length: int) -> str:
    if s[seed][0] != seed:
        raise NotProlongable(f"image of {seed!r} does not start with {seed!r}")
    word: tuple[str, ...] = (seed,)
    while len(word) < length:
        nxt = s.apply(word)
        if len(nxt) == len(word):
            raise NoGrowth(f"iteration from {seed!r} stalls at length {len(word)}")
        word = nxt
    return "".join(word[:length])


# ---------------------------------------------------------------- interval exchanges

@dataclass(frozen=True)
class IETConfig:
    """Lengths of ``I_1..I_d`` (top order) and ``perm[j-1] = zeta(j)``, the
    bottom position of interval ``j``."""
    lengths: tuple[Fraction, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(Fraction(x) for x in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        d = len(lengths)
        if d < 1 or len(self.perm) != d:
            raise ValueError("lengths and permutation must have the same positive size")
        if any(x <= 0 for x in lengths):
            raise ValueError("lengths must be positive")
        if sum(lengths) != 1:
            raise ValueError(f"lengths sum to {sum(lengths)}, not 1")
        if sorted(self.perm) != list(range(1, d + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{d}")

    @property
    def d(self) -> int:
        return len(self.lengths)

    def starts(self) -> list[Fraction]:
        out, acc = [], Fraction(0)
        for x in self.lengths:
            out.append(acc)
            acc += x
        return out

    def image_starts(self) -> list[Fraction]:
        return [sum((self.lengths[k] for k in range(self.d) if self.perm[k] < self.perm[j]),
                    Fraction(0)) for j in range(self.d)]

    def is_irreducible(self) -> bool:
        return all(set(self.perm[:k]) != set(range(1, k + 1)) for k in range(1, self.d))

    def interval_of(self, x: Fraction) -> int:
        """0-based index of the top interval containing ``x``."""
        starts = self.starts()
        for j in range(self.d - 1, -1, -1):
            if x >= starts[j]:
                return j
        raise ValueError(f"{x} outside [0, 1)")

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        j = self.interval_of(x)
        return x - self.starts()[j] + self.image_starts()[j]


@dataclass(frozen=True)
class RauzyInduction:
    system: SAdicSystem
    tape: tuple[int, ...]
    configs: tuple[IETConfig, ...]  # configs[k] is the IET after k steps


def _letters(d):
    return tuple(str(i) for i in range(1, d + 1))


def rauzy_step(cfg: IETConfig) -> tuple[int, Substitution, IETConfig]:
    """One Rauzy induction step; returns (type, substitution, induced IET).

    Type 0: ``|I_d| > |I_e|``, drop ``T(I_e)``; the substitution is ``e -> e d``.
    Type 1: ``|I_e| > |I_d|``, drop ``I_d``; ``I_e`` splits and the new right
    piece ``e+1`` maps to ``e d`` while later letters shift down by one.
    """
    d = cfg.d
    if not cfg.is_irreducible():
        raise ReduciblePermutation(f"permutation {cfg.perm} is reducible")
    lam, perm = list(cfg.lengths), list(cfg.perm)
    e = perm.index(d) + 1
    ld, le = lam[d - 1], lam[e - 1]
    letters = _letters(d)
    if ld == le:
        raise KeaneTie(0)
    if ld > le:
        kind = 0
        images = [(a,) for a in letters]
        images[e - 1] = (str(e), str(d))
        lam[d - 1] = ld - le
        pd = perm[d - 1]
        new_perm = [p + 1 if p > pd and j != e - 1 else p for j, p in enumerate(perm)]
        new_perm[e - 1] = pd + 1
    else:
        kind = 1
        images = []
        for a in range(1, d + 1):
            if a <= e:
                images.append((str(a),))
            elif a == e + 1:
                images.append((str(e), str(d)))
            else:
                images.append((str(a - 1),))
        pd = perm[d - 1]
        lam = lam[:e - 1] + [le - ld, ld] + lam[e:d - 1]
        new_perm = perm[:e] + [pd] + perm[e:d - 1]
    total = sum(lam)
    new = IETConfig(tuple(x / total for x in lam), tuple(new_perm))
    return kind, Substitution(letters, letters, tuple(images)), new


def iet_rauzy_induction(cfg: IETConfig, steps: int) -> RauzyInduction:
    """Iterate Rauzy induction with exact lengths (renormalised each step).

    Raises ``KeaneTie`` (1-based step, partial data attached) on an exact tie.
    """
    if cfg.d < 2:
        raise ValueError("need at least two intervals")
    subs, tape, configs = [], [], [cfg]
    for k in range(1, steps + 1):
        try:
            kind, sub, nxt = rauzy_step(configs[-1])
        except KeaneTie:
            raise KeaneTie(k, subs, tape) from None
        subs.append(sub)
        tape.append(kind)
        configs.append(nxt)
    return RauzyInduction(SAdicSystem(tuple(subs)), tuple(tape), tuple(configs))


def induced_substitution_check(cfg: IETConfig, right_end, depth: int) -> Substitution:
    """First-return itineraries to ``J = [0, right_end)``.

    ``right_end`` must be an endpoint of some ``I_j`` or ``T(I_j)``.  The pieces
    of ``J`` with equal itinerary are the intervals of the induced exchange;
    they are lettered ``1..k`` left to right and mapped to their itineraries.
    """
    r = Fraction(right_end)
    starts, istarts = cfg.starts(), cfg.image_starts()
    ends = {Fraction(1)} | set(starts) | set(istarts) | \
        {istarts[j] + cfg.lengths[j] for j in range(cfg.d)}
    if not 0 < r <= 1 or r not in ends:
        raise InvalidWindow(f"{r} is not an endpoint of an interval or image interval")
    cuts = sorted({0, r} | {s for s in starts if 0 < s < r})
    # each piece: (left end of piece in J, current left, current right, itinerary)
    work = [(a, a, b, ()) for a, b in zip(cuts, cuts[1:])]
    done = []
    while work:
        origin, lo, hi, itin = work.pop()
        j = cfg.interval_of(lo)
        if hi > starts[j] + cfg.lengths[j]:
            mid = starts[j] + cfg.lengths[j]
            work.append((origin, lo, mid, itin))
            work.append((origin + (mid - lo), mid, hi, itin))
            continue
        if len(itin) >= depth:
            raise ReturnTimeExceeded(f"return time exceeds {depth}")
        shift = istarts[j] - starts[j]
        lo, hi, itin = lo + shift, hi + shift, itin + (str(j + 1),)
        if hi <= r:
            done.append((origin, hi - lo, itin))
        elif lo >= r:
            work.append((origin, lo, hi, itin))
        else:
            done.append((origin, r - lo, itin))
            work.append((origin + (r - lo), r, hi, itin))
    pieces: dict[tuple, list] = {}
    for origin, length, itin in done:
        pieces.setdefault(itin, []).append((origin, length))
    ordered = sorted(pieces.items(), key=lambda kv: min(o for o, _ in kv[1]))
    if len(ordered) > cfg.d:
        raise InvalidWindow(f"{len(ordered)} continuity intervals exceed {cfg.d}; window not admissible")
    letters = tuple(str(i) for i in range(1, len(ordered) + 1))
    return Substitution(letters, _letters(cfg.d), tuple(itin for itin, _ in ordered))


def induction_window(cfg: IETConfig) -> Fraction:
    """Right end of the window kept by one Rauzy induction step."""
    e = cfg.perm.index(cfg.d)
    return 1 - min(cfg.lengths[-1], cfg.lengths[e])
