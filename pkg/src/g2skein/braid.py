"""Braid action on web spaces, trace closure and the normalized link invariant.

A letter ``(i, sign)`` places a crossing on boundary positions ``i-1, i``
(0-based) of the open web below it. The strands keep their colors, so the
colors at those two positions are swapped.

>>> b = BraidWord.parse("1 1 1", (1, 1))
>>> writhe(b)
WritheCounts(w11=3, w22=0)
>>> str(invariant(BraidWord.parse("", (1,))).eval_at(1))
'7'
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import tables
from .qalg import RatFunc, parse_ratfunc
from .skein import (
    Report,
    Stuck,
    Undecided,
    equal,
    extended_registry,
    pair,
    reduce_interior,
    run_case,
    to_basis,
)
from .web import BasisRegistry, Web, WebSum, _Builder, elementary, glue, insert

__all__ = [
    "BraidWord",
    "WritheCounts",
    "TermCapExceeded",
    "crossing",
    "crossing_table",
    "act",
    "apply_word",
    "nested_arcs",
    "close_trace",
    "bracket",
    "writhe",
    "invariant",
    "torus_reference",
    "curl",
    "curl_factor",
    "insert",
    "torus_word",
    "normalization",
    "check_r2",
    "check_r3",
    "reidemeister_suite",
]

TERM_CAP_ENV = "G2SKEIN_TERM_CAP"
DEFAULT_TERM_CAP = 20000


class TermCapExceeded(Stuck):
    """Raised when an unreduced expansion grows past the term cap."""


@dataclass(frozen=True)
class BraidWord:
    """Colored braid word; ``colors`` are read at the bottom of the braid."""

    colors: tuple[int, ...]
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = len(self.colors)
        if n < 1:
            raise ValueError("a braid needs at least one strand")
        if any(c not in (1, 2) for c in self.colors):
            raise ValueError(f"colors must be 1 or 2, got {self.colors}")
        for i, s in self.letters:
            if not 1 <= i < n or s not in (1, -1):
                raise ValueError(f"letter {s * i} out of range for {n} strands")

    @property
    def strands(self) -> int:
        return len(self.colors)

    @classmethod
    def parse(cls, text: str, colors: Sequence[int]) -> BraidWord:
        """Whitespace-separated signed generator indices, e.g. ``"1 1 -2"``."""
        letters = []
        for tok in text.split():
            try:
                v = int(tok)
            except ValueError:
                raise ValueError(f"bad braid letter {tok!r}") from None
            if v == 0:
                raise ValueError("braid letters are nonzero")
            letters.append((abs(v), 1 if v > 0 else -1))
        return cls(tuple(colors), tuple(letters))

    def __str__(self) -> str:
        return " ".join(str(s * i) for i, s in self.letters)

    def top_colors(self) -> tuple[int, ...]:
        cols = list(self.colors)
        for i, _ in self.letters:
            cols[i - 1], cols[i] = cols[i], cols[i - 1]
        return tuple(cols)


@dataclass(frozen=True)
class WritheCounts:
    w11: int = 0
    w22: int = 0


# -- crossings ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def crossing(c1: int, c2: int, sign: int = 1) -> WebSum:
    """Crossing expansion with bottom colors ``(c1, c2)``.

    The boundary reads (BL, TL, TR, BR) with coloring ``(c1, c2, c1, c2)``.
    A negative crossing uses the bar of every coefficient.

    >>> len(crossing(2, 2)), crossing(1, 2).coloring
    (5, (1, 2, 1, 2))
    """
    if c1 not in (1, 2) or c2 not in (1, 2):
        raise ValueError("colors must be 1 or 2")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    terms = tables.crossing_table()[(c1, c2)]
    out = WebSum.zero((c1, c2, c1, c2))
    for t in terms:
        out.add_term(t.web, t.value if sign > 0 else t.value.bar())
    return out


def crossing_table(sign: int = 1) -> dict[tuple[int, int], WebSum]:
    return {k: crossing(*k, sign) for k in ((1, 1), (1, 2), (2, 1), (2, 2))}


def _term_cap() -> int:
    raw = os.environ.get(TERM_CAP_ENV)
    return int(raw) if raw else DEFAULT_TERM_CAP


def _reduce(x: WebSum, reg: BasisRegistry | None) -> WebSum:
    if reg is not None and x.coloring in reg:
        return to_basis(x, reg)
    out = reduce_interior(x)
    cap = _term_cap()
    if len(out) > cap:
        raise TermCapExceeded(f"{len(out)} terms exceed the cap of {cap} (set {TERM_CAP_ENV})")
    return out


def act(letter: tuple[int, int] | int, x, reg: BasisRegistry | None = None, offset: int = 0) -> WebSum:
    """Apply one braid letter to the open web ``x`` and reduce.

    ``letter`` is ``(i, sign)`` or a signed integer; it acts on positions
    ``offset + i - 1`` and ``offset + i``. The result is rewritten in the
    registered basis when its coloring has one, otherwise only interior
    reductions are applied.
    """
    if isinstance(letter, int):
        letter = (abs(letter), 1 if letter > 0 else -1)
    i, sign = letter
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    p = offset + i - 1
    if not 0 <= p < len(x.coloring) - 1:
        raise ValueError(f"letter {i} out of range for coloring {x.coloring}")
    t = crossing(x.coloring[p], x.coloring[p + 1], sign)
    return _reduce(insert(x, t, p), reg)


def apply_word(b: BraidWord, x, reg: BasisRegistry | None = None, offset: int = 0) -> WebSum:
    for letter in b.letters:
        x = act(letter, x, reg, offset)
    return x


# -- closure and invariant --------------------------------------------------------------------


def nested_arcs(colors: Sequence[int]) -> Web:
    """Arcs joining ``p`` and ``2n-1-p``; coloring ``colors + reversed(colors)``."""
    colors = tuple(colors)
    bld = _Builder()
    n = len(colors)
    left, right = [], []
    for c in colors:
        a, b = bld.add_node("B"), bld.add_node("B")
        bld.connect(bld.add_dart(a, c), bld.add_dart(b, c))
        left.append(a)
        right.append(b)
    return bld.freeze(left + right[::-1]) if n else Web()


def _registry() -> BasisRegistry:
    return extended_registry()


def bracket(b: BraidWord) -> RatFunc:
    """Unnormalized evaluation of the trace closure of ``b``."""
    if b.top_colors() != b.colors:
        raise ValueError("colors must be constant along each component of the closure")
    x = WebSum.of(nested_arcs(b.colors))
    x = apply_word(b, x, _registry())
    cap = nested_arcs(b.colors)
    return pair(x, cap)


def close_trace(b: BraidWord) -> WebSum:
    """The closed diagram of ``b`` as an unreduced sum of planar webs."""
    if b.top_colors() != b.colors:
        raise ValueError("colors must be constant along each component of the closure")
    x = WebSum.of(nested_arcs(b.colors))
    for i, s in b.letters:
        x = insert(x, crossing(x.coloring[i - 1], x.coloring[i], s), i - 1)
        if len(x) > _term_cap():
            raise TermCapExceeded(f"{len(x)} terms exceed the cap (set {TERM_CAP_ENV})")
    return glue(x, WebSum.of(nested_arcs(b.colors)), 2 * b.strands)


def writhe(b: BraidWord) -> WritheCounts:
    """Signed counts of single-single and double-double crossings."""
    cols = list(b.colors)
    w = [0, 0, 0]
    for i, s in b.letters:
        a, c = cols[i - 1], cols[i]
        if a == c:
            w[a] += s
        cols[i - 1], cols[i] = c, a
    return WritheCounts(w[1], w[2])


def normalization(w: WritheCounts) -> RatFunc:
    return RatFunc.q(-12 * w.w11 - 24 * w.w22)


def invariant(b: BraidWord) -> RatFunc:
    """Writhe-normalized evaluation; always a Laurent polynomial."""
    v = normalization(writhe(b)) * bracket(b)
    if not v.is_laurent():
        raise Stuck(f"invariant of {b} is not a Laurent polynomial: {v}")
    return v


# -- reference forms ----------------------------------------------------------------------------


def torus_reference(n: int, colors: tuple[int, int] = (1, 1)) -> RatFunc:
    """Closed form for the torus link T(2, n) with the given strand colors.

    >>> [torus_reference(0, c).eval_at(1) for c in ((1, 1), (1, 2), (2, 2))]
    [Fraction(49, 1), Fraction(98, 1), Fraction(196, 1)]
    """
    colors = tuple(sorted(colors))
    if colors not in tables.TORUS:
        raise ValueError(f"no closed form for colors {colors}")
    if colors == (1, 2) and n % 2:
        raise ValueError("mixed colors need an even number of crossings")
    _, rows = tables.TORUS[colors]
    total = RatFunc(0)
    for base, coeff in rows:
        total = total + parse_ratfunc(base) ** n * parse_ratfunc(coeff)
    return total


def torus_word(n: int, colors: tuple[int, int] = (1, 1)) -> BraidWord:
    s = 1 if n >= 0 else -1
    return BraidWord(tuple(colors), ((1, s),) * abs(n))


def curl(color: int, sign: int = 1) -> WebSum:
    """Close the right strand of a crossing onto itself (a kink)."""
    out = WebSum.zero((color, color))
    for w, c in crossing(color, color, sign):
        bld = _Builder()
        nm, _ = bld.absorb(w)
        bl, tl, tr, br = (nm[x] for x in w.boundary)
        bld.splice(tr, br)
        out.add_term(bld.freeze([bl, tl]), c)
    return reduce_interior(out)


def curl_factor(color: int, sign: int = 1) -> RatFunc:
    """Scalar ``f`` with ``curl(color, sign) == f * strand``."""
    k = curl(color, sign)
    strand = elementary("single" if color == 1 else "double")
    if k.webs() != [strand] and not k.is_zero():
        raise Undecided("kink did not reduce to a multiple of the strand", k)
    return k.coeff(strand)


# -- Reidemeister checks --------------------------------------------------------------------


def _open_basis(colors: Sequence[int], reg: BasisRegistry) -> tuple[Web, ...]:
    """Registered webs with ``colors`` along the top of the disk and cups below.

    Position ``k`` of the top row is followed, clockwise, by the remaining
    boundary points; we use the 4-point space whose first two points carry
    ``colors``.
    """
    s = tuple(colors) + tuple(reversed(colors))
    return reg[s]


def check_r2(colors: tuple[int, int], reg: BasisRegistry | None = None) -> bool:
    """``b1`` then ``b1^-1`` (and the reverse) fixes every registered basis web."""
    reg = reg or extended_registry()
    for w in _open_basis(colors, reg):
        for s in (1, -1):
            y = act((1, -s), act((1, s), w, reg), reg)
            if not equal(y, WebSum.of(w), reg):
                return False
    return True


def _r3_sides(colors: tuple[int, int, int]) -> tuple[WebSum, WebSum]:
    start = WebSum.of(nested_arcs(colors))
    left = apply_word(BraidWord(colors, ((1, 1), (2, 1), (1, 1))), start)
    right = apply_word(BraidWord(colors, ((2, 1), (1, 1), (2, 1))), start)
    return left, right


def check_r3(colors: tuple[int, int, int]) -> bool:
    """``b1 b2 b1 == b2 b1 b2`` applied to nested arcs on three strands.

    Bending the bottom ends up is injective on three-strand tangles, so
    this is the full identity. Equality is decided by pairing against a
    spanning subset of the terms.
    """
    left, right = _r3_sides(colors)
    return equal(left, right, extended_registry(), span_from_terms=True)


def reidemeister_suite(
    pairs: Iterable[tuple[int, int]] = ((1, 1), (1, 2), (2, 1), (2, 2)),
    triples: Iterable[tuple[int, int, int]] = ((1, 1, 1), (1, 1, 2)),
) -> Report:
    rep = Report()
    for p in pairs:
        run_case(rep, f"R2 {p}", lambda: check_r2(p))
    for t in triples:
        run_case(rep, f"R3 {t}", lambda: check_r3(t))
    return rep
