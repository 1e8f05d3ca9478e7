"""Audited coefficient tables.

Every coefficient used anywhere in the package is written here exactly once,
as a string in bracket notation (``[n]`` is a quantum integer), together with
the local web it multiplies. Strings are parsed lazily with
:func:`g2skein.qalg.parse_ratfunc`, so the table can be dumped verbatim for
auditing.

Local webs come in two layouts:

* *box* layout for tangles: boundary positions ``0=BL, 1=TL, 2=TR, 3=BR``
  (clockwise from bottom-left). A box web is a map from its bottom pair to its
  top pair.
* *face* layout for rewrite rules: the legs of a k-gon listed clockwise from
  the top corner. For 4-gons this is ``TL, TR, BR, BL``.

A face pattern is the cyclic list of ``(leg label, side label)`` pairs, read
clockwise; side ``i`` joins corner ``i`` to corner ``i + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .qalg import RatFunc, parse_ratfunc
from .web import Web, glue, mirror, rotate, web_from_drawing

__all__ = [
    "Term",
    "Relation",
    "polygon_web",
    "mirror_pattern",
    "box",
    "loop_relations",
    "face_relations",
    "edge_relation",
    "rearranged_elimination",
    "expanding_moves",
    "crossing_table",
    "projector_table",
    "spectral_table",
    "TORUS",
    "W4",
]

# -- data types ----------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """A coefficient string and the local web it multiplies."""

    coeff: str
    web: Web

    @cached_property
    def value(self) -> RatFunc:
        return parse_ratfunc(self.coeff)


@dataclass(frozen=True)
class Relation:
    """One printed relation: a local left-hand side and its expansion.

    ``shape`` is ``loop``, ``face`` or ``edge``. For faces ``pattern`` is the
    clockwise ``(leg, side)`` cycle; for loops it holds the single label; for
    the edge rule it is empty. ``group`` is ``base`` for the defining
    relations, ``derived`` for the additional ones and ``expanding`` for the
    two inflating moves.
    """

    name: str
    group: str
    shape: str
    pattern: tuple
    terms: tuple[Term, ...]

    @property
    def arity(self) -> int:
        return len(self.pattern) if self.shape == "face" else (4 if self.shape == "edge" else 0)

    def lhs(self) -> Web:
        if self.shape == "face":
            return polygon_web(self.pattern)
        if self.shape == "loop":
            return Web(loops=(1, 0) if self.pattern[0] == 1 else (0, 1))
        if self.shape == "edge":
            return rotate(box("T", (1, 1, 1, 1), 2), 1)
        raise ValueError(self.shape)


# -- local webs ------------------------------------------------------------------

_BOX_PTS = [(-2.0, -2.0), (-2.0, 2.0), (2.0, 2.0), (2.0, -2.0)]


def box(shape: str, legs: Sequence[int], inner: int | Sequence[int] = 1) -> Web:
    """A named 4-point web in box layout.

    ``P``: strands BL-TL and BR-TR. ``C``: arcs TL-TR and BL-BR.
    ``T``: a vertex on TL,TR joined by a rung to a vertex on BL,BR.
    ``Y``: a vertex on TL,BL joined by a rung to a vertex on TR,BR.
    ``Sq``: a square with one leg at each corner; ``inner`` lists the sides
    (top, right, bottom, left).

    >>> box("T", (1, 1, 1, 1), 2).coloring
    (1, 1, 1, 1)
    """
    bl, tl, tr, br = legs
    if shape == "P":
        return web_from_drawing({}, _BOX_PTS, [(0, 1, bl), (3, 2, br)])
    if shape == "C":
        return web_from_drawing({}, _BOX_PTS, [(1, 2, tl), (0, 3, bl)])
    if shape == "T":
        v = {"u": (0.0, 1.0), "d": (0.0, -1.0)}
        e = [(1, "u", tl), (2, "u", tr), (0, "d", bl), (3, "d", br), ("u", "d", inner)]
        return web_from_drawing(v, _BOX_PTS, e)
    if shape == "Y":
        v = {"l": (-1.0, 0.0), "r": (1.0, 0.0)}
        e = [(1, "l", tl), (0, "l", bl), (2, "r", tr), (3, "r", br), ("l", "r", inner)]
        return web_from_drawing(v, _BOX_PTS, e)
    if shape == "Sq":
        top, right, bottom, left = (inner,) * 4 if isinstance(inner, int) else inner
        v = {"a": (-1.0, 1.0), "b": (1.0, 1.0), "c": (1.0, -1.0), "e": (-1.0, -1.0)}
        e = [
            (1, "a", tl), (2, "b", tr), (3, "c", br), (0, "e", bl),
            ("a", "b", top), ("b", "c", right), ("c", "e", bottom), ("e", "a", left),
        ]
        return web_from_drawing(v, _BOX_PTS, e)
    raise ValueError(f"unknown box shape {shape!r}")


def _face(w: Web) -> Web:
    """Box layout -> face layout (TL, TR, BR, BL)."""
    return rotate(w, 1)


def _circle(k: int, r: float) -> list[tuple[float, float]]:
    return [
        (r * math.cos(math.pi / 2 - 2 * math.pi * i / k), r * math.sin(math.pi / 2 - 2 * math.pi * i / k))
        for i in range(k)
    ]


def polygon_web(pattern: Sequence[tuple[int, int]]) -> Web:
    """The k-gon with the given clockwise ``(leg, side)`` pattern.

    >>> polygon_web([(1, 1), (1, 1), (1, 1)]).coloring
    (1, 1, 1)
    >>> polygon_web([(2, 1), (2, 1)]).n_vertices
    2
    """
    k = len(pattern)
    if k == 1:
        (leg, side), = pattern
        star = web_from_drawing({"v": (0.0, 0.0)}, _circle(3, 2.0), [(i, "v", l) for i, l in enumerate((leg, side, side))])
        return glue(star, web_from_drawing({}, [(0.0, 1.0), (0.0, -1.0)], [(0, 1, side)]), 2)
    corners = {f"c{i}": p for i, p in enumerate(_circle(k, 1.0))}
    edges = [(i, f"c{i}", pattern[i][0]) for i in range(k)]
    if k == 2:
        edges += [("c0", "c1", pattern[0][1], (1.0, 0.0)), ("c1", "c0", pattern[1][1], (-1.0, 0.0))]
    else:
        edges += [(f"c{i}", f"c{(i + 1) % k}", pattern[i][1]) for i in range(k)]
    return web_from_drawing(corners, _circle(k, 3.0), edges)


def mirror_pattern(pattern: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Pattern of the mirror image, re-based at the same corner.

    >>> mirror_pattern([(1, 2), (1, 1), (2, 1)])
    ((1, 1), (2, 1), (1, 2))
    """
    k = len(pattern)
    return tuple((pattern[-i % k][0], pattern[(-i - 1) % k][1]) for i in range(k))


def mirror_local(w: Web) -> Web:
    """Mirror a face-layout web keeping leg 0 in place."""
    k = len(w.boundary)
    return rotate(mirror(w), k - 1) if k else mirror(w)


def _strand(label: int) -> Web:
    return web_from_drawing({}, [(0.0, 2.0), (0.0, -2.0)], [(0, 1, label)])


def _vertex(legs: Sequence[int]) -> Web:
    return web_from_drawing({"v": (0.0, 0.0)}, _circle(3, 2.0), [(i, "v", l) for i, l in enumerate(legs)])


def _tree5(i: int) -> Web:
    """Pentagon with side ``i`` removed: a chain of three vertices."""
    pts = _circle(5, 3.0)
    c = _circle(5, 1.0)
    a, b, m = (i + 2) % 5, (i + 4) % 5, (i + 3) % 5
    v = {"a": c[a], "m": c[m], "b": c[b]}
    e = [((i + 1) % 5, "a", 1), (a, "a", 1), (m, "m", 1), (b, "b", 1), (i, "b", 1), ("a", "m", 1), ("m", "b", 1)]
    return web_from_drawing(v, pts, e)


def _arc_vertex5(i: int) -> Web:
    """Legs ``i, i+1`` joined by an arc; the other three meet at a vertex."""
    pts = _circle(5, 3.0)
    e = [(i, (i + 1) % 5, 1)] + [((i + j) % 5, "v", 1) for j in (2, 3, 4)]
    return web_from_drawing({"v": (0.0, 0.0)}, pts, e)


def _square_terms(rows: Sequence[tuple[str, str, Sequence[int], object]]) -> tuple[Term, ...]:
    return tuple(Term(c, _face(box(s, legs, inner))) for c, s, legs, inner in rows)


# Box colorings below are (BL, TL, TR, BR).
def _sq(pattern, rows, name, group="derived") -> Relation:
    return Relation(name, group, "face", tuple(pattern), _square_terms(rows))


# -- relations -------------------------------------------------------------------


def loop_relations() -> tuple[Relation, ...]:
    empty = Web()
    return (
        Relation("loop-1", "base", "loop", (1,), (Term("[2][7][12]/([4][6])", empty),)),
        Relation("loop-2", "derived", "loop", (2,), (Term("[7][8][15]/([3][4][5])", empty),)),
    )


def edge_relation() -> Relation:
    """Double edge between two mixed vertices, drawn as a vertical rung.

    Legs in face layout: the two legs of the upper vertex (TL, TR), then the
    two of the lower vertex (BR, BL).
    """
    s = (1, 1, 1, 1)
    return Relation(
        "double-edge-elimination",
        "base",
        "edge",
        (),
        _square_terms([
            ("-[3]/[2]", "P", s, 1),
            ("[3][4][6]/([2]^2[12])", "C", s, 1),
            ("1/[2]", "T", s, 1),
            ("[3]/[2]", "Y", s, 1),
        ]),
    )


def rearranged_elimination() -> tuple[Relation, dict[str, str]]:
    """The elimination solved for the horizontal single rung.

    Returns the relation (left side: ``Y``) and the printed coefficients, which
    tests compare with the algebraic rearrangement of :func:`edge_relation`.
    """
    s = (1, 1, 1, 1)
    printed = {"P": "1", "C": "-[4][6]/([2][12])", "T": "-1/[3]", "D": "[2]/[3]"}
    terms = _square_terms([
        (printed["P"], "P", s, 1),
        (printed["C"], "C", s, 1),
        (printed["T"], "T", s, 1),
        (printed["D"], "T", s, 2),
    ])
    return Relation("rearranged-elimination", "base", "edge", (), terms), printed


def face_relations() -> tuple[Relation, ...]:
    """All printed face relations (monogons through the pentagon)."""
    s1, s2 = _strand(1), _strand(2)
    R: list[Relation] = []
    add = R.append
    # monogons
    add(Relation("monogon-1", "base", "face", ((1, 1),), ()))
    add(Relation("monogon-2", "base", "face", ((2, 1),), ()))
    add(Relation("monogon-22", "derived", "face", ((2, 2),), ()))
    # digons
    add(Relation("digon-11", "base", "face", ((1, 1), (1, 1)), (Term("-[3][8]/[4]", s1),)))
    add(Relation("digon-22", "base", "face", ((2, 1), (2, 1)), (Term("-[2][3]", s2),)))
    add(Relation("digon-12", "derived", "face", ((1, 1), (2, 1)), ()))
    add(Relation("digon-mixed", "derived", "face", ((1, 2), (1, 1)), (Term("-[6][8][15]/([5][12])", s1),)))
    add(Relation("digon-double", "derived", "face", ((2, 2), (2, 2)), (Term("-[2]^2[12][18]/([3]^2[4][9])", s2),)))
    # triangles; vertex legs are (top, lower right, lower left)
    add(Relation("triangle-111", "base", "face", ((1, 1),) * 3, (Term("[6]/[2]", _vertex((1, 1, 1))),)))
    add(Relation("triangle-122", "base", "face", ((1, 1), (2, 1), (2, 1)), ()))
    add(Relation("triangle-222", "base", "face", ((2, 1),) * 3,
                 (Term("[3]^2[4][6]/([2][12])", _vertex((2, 2, 2))),)))
    add(Relation("triangle-211", "derived", "face", ((2, 1), (1, 1), (1, 1)), (Term("-[3]", _vertex((2, 1, 1))),)))
    add(Relation("triangle-d-111", "derived", "face", ((1, 1), (1, 2), (1, 1)),
                 (Term("-[4][6][15]/([5][12])", _vertex((1, 1, 1))),)))
    add(Relation("triangle-d-211", "derived", "face", ((2, 1), (1, 2), (1, 1)),
                 (Term("-[3][4][6](q^2-2+q^-2)/[12]", _vertex((2, 1, 1))),)))
    add(Relation("triangle-dd-211", "derived", "face", ((2, 2), (1, 1), (1, 2)),
                 (Term("[6][18]/([3][9])", _vertex((2, 1, 1))),)))
    add(Relation("triangle-ddd-222", "derived", "face", ((2, 2),) * 3,
                 (Term("-[2][12](q^8-q^2+1-q^-2+q^-8)/([3][6])", _vertex((2, 2, 2))),)))
    # squares; patterns list corners TL, TR, BR, BL with the side that follows
    a = (1, 1, 1, 1)
    add(_sq([(1, 1)] * 4, [
        ("[3]", "P", a, 1), ("[3]", "C", a, 1), ("-[4]/[2]", "T", a, 1), ("-[4]/[2]", "Y", a, 1),
    ], "square-1111"))
    add(_sq([(1, 1), (1, 1), (1, 1), (1, 2)], [
        ("[3][7]/[2]", "P", a, 1),
        ("[3]/[2]", "C", a, 1),
        ("-[4][6](q^6-q^2-1-q^-2+q^-6)/([2]^2[12])", "T", a, 1),
        ("[7]/[2]", "Y", a, 1),
    ], "square-left-double"))
    add(_sq([(1, 1), (1, 2), (1, 1), (1, 2)], [
        ("[3][4][6](q^14+q^8+2q^4-q^2+1-q^-2+2q^-4+q^-8+q^-14)/([2][12])", "P", a, 1),
        ("[3][4]^2[6]^2(q^6-2q^4+q^2+1+q^-2-2q^-4+q^-6)/([2]^2[12]^2)", "C", a, 1),
        ("-[4][6](q^4-2q^2+1-2q^-2+q^-4)/([2][12])", "T", a, 1),
        ("-[4][6](q^12+q^10+q^6-q^4+q^2-1+q^-2-q^-4+q^-6+q^-10+q^-12)/([2][12])", "Y", a, 1),
    ], "square-left-right-double"))
    b = (1, 1, 2, 1)
    add(_sq([(1, 1), (2, 1), (1, 1), (1, 1)], [("1", "T", b, 1), ("1", "Y", b, 1)], "square-one-double-leg"))
    c = (1, 2, 2, 1)
    add(_sq([(2, 1), (2, 1), (1, 1), (1, 1)], [
        ("[3][4][6]/[12]", "C", c, 1), ("[3][4][6]/[12]", "T", c, 2), ("1", "Y", c, 1),
    ], "square-two-double-legs"))
    add(_sq([(1, 1), (2, 1), (1, 1), (1, 2)], [
        ("[4][6]^2/([2][3][12])", "T", b, 1), ("-[4]", "Y", b, 1),
    ], "square-left-double-leg"))
    add(_sq([(2, 1), (2, 1), (1, 2), (1, 1)], [
        ("[3][4][6][10]/([5][12])", "C", c, 1),
        ("[3][4][6]/([2][12])", "T", c, 2),
        ("[4][6]^2/([2][3][12])", "Y", c, 1),
    ], "square-bottom-double"))
    add(_sq([(1, 2), (2, 2), (1, 1), (1, 1)], [
        ("[2][18]/([3][9])", "T", b, 1), ("[2][18]/([3][9])", "Y", b, 1),
    ], "square-top-right-double"))
    d = (2, 1, 2, 1)
    add(_sq([(1, 2), (2, 2), (1, 1), (2, 1)], [
        ("-1", "Y", d, 1), ("-1", "T", d, 1), ("-[12]/([3][6])", "Sq", d, 1),
    ], "square-top-right-double-legs"))
    add(_sq([(2, 2), (2, 2), (1, 1), (1, 2)], [
        ("[2][18]/([3][9])", "C", c, 1),
        ("(q^10+q^8-q^2-1-q^-2+q^-8+q^-10)/[3]", "T", c, 2),
        ("-[2][5][12][18]/([3]^2[4][6][9])", "Y", c, 1),
    ], "square-three-double"))
    e = (2, 2, 2, 2)
    add(_sq([(2, 2)] * 4, [
        ("[2]^4[5][12]^2(q^2-2+q^-2)/([3]^2[4]^2[6]^2)", "P", e, 1),
        ("[2]^4[5][12]^2(q^2-2+q^-2)/([3]^2[4]^2[6]^2)", "C", e, 1),
        ("-(q^6-q^4-1-q^-4+q^-6)[2]^2[12]/([3][4][6])", "T", e, 2),
        ("-(q^6-q^4-1-q^-4+q^-6)[2]^2[12]/([3][4][6])", "Y", e, 2),
        ("[2]^3[5][12]^4/([3]^4[4]^3[6]^4)", "Sq", e, 1),
    ], "square-all-double"))
    # pentagon
    terms = [Term("1", _tree5(i)) for i in range(5)] + [Term("-1", _arc_vertex5(i)) for i in range(5)]
    add(Relation("pentagon", "derived", "face", ((1, 1),) * 5, tuple(terms)))
    return tuple(R)


def expanding_moves() -> tuple[Relation, ...]:
    """The two inflating moves: split a double strand, split a V222 vertex."""
    return (
        Relation("split-double-strand", "expanding", "strand", (2,),
                 (Term("-1/([2][3])", polygon_web([(2, 1), (2, 1)])),)),
        Relation("split-v222", "expanding", "vertex", (2, 2, 2),
                 (Term("[2][12]/([3]^2[4][6])", polygon_web([(2, 1)] * 3)),)),
    )


# -- crossings, projectors, spectra -----------------------------------------------

def crossing_table() -> dict[tuple[int, int], tuple[Term, ...]]:
    """Positive crossings keyed by the colors of the bottom pair (left, right)."""
    a, e = (1, 1, 1, 1), (2, 2, 2, 2)
    m12, m21 = (1, 2, 1, 2), (2, 1, 2, 1)
    return {
        (1, 1): (
            Term("q^3/[2]", box("P", a)),
            Term("q^-3/[2]", box("C", a)),
            Term("q^-1/[2]", box("T", a, 1)),
            Term("q/[2]", box("Y", a, 1)),
        ),
        (1, 2): (
            Term("q^3/[3]", box("Y", m12, 1)),
            Term("q^-3/[3]", box("T", m12, 1)),
            Term("1/([2][3])", box("Sq", m12, 1)),
        ),
        (2, 1): (
            Term("q^3/[3]", box("Y", m21, 1)),
            Term("q^-3/[3]", box("T", m21, 1)),
            Term("1/([2][3])", box("Sq", m21, 1)),
        ),
        (2, 2): (
            Term("(q^10-q^6-q^4)[4][6]/([2][12])", box("P", e)),
            Term("(q^-10-q^-6-q^-4)[4][6]/([2][12])", box("C", e)),
            Term("q^-3[3][4]^2[6]^2/([2]^2[12]^2)", box("T", e, 2)),
            Term("q^3[3][4]^2[6]^2/([2]^2[12]^2)", box("Y", e, 2)),
            Term("1/[3]", box("Sq", e, 1)),
        ),
    }


# Two candidate readings of a garbled factor in the top projector on two
# double strands; the projector checks pick the one that is idempotent.
P22_READINGS = {"bracket": "([4][14]-[7])", "integer": "([4][14]-7)"}


def projector_table(reading: str = "bracket") -> dict[tuple[str, str], tuple[Term, ...]]:
    """Projector expansions keyed by (space, weight label)."""
    a, e, m = (1, 1, 1, 1), (2, 2, 2, 2), (1, 2, 1, 2)
    P, C, T, D = box("P", a), box("C", a), box("T", a, 1), box("T", a, 2)
    P2, C2, T2, Y2, S2 = box("P", e), box("C", e), box("T", e, 2), box("Y", e, 2), box("Sq", e, 1)
    Ym, Tm, Sm = box("Y", m, 1), box("T", m, 1), box("Sq", m, 1)
    f = P22_READINGS[reading]
    return {
        ("End11", "2w1"): (
            Term("1", P), Term("[4]/([3][8])", T), Term("1/([2][3])", D), Term("-[4][6]/([2][7][12])", C),
        ),
        ("End11", "w1"): (Term("-[4]/([3][8])", T),),
        ("End11", "w2"): (Term("-1/([2][3])", D),),
        ("End11", "0"): (Term("[4][6]/([2][7][12])", C),),
        ("Hom12", "w1+w2"): (
            Term("1/[3]", Ym),
            Term("[5](q^8+q^2-1+q^-2+q^-8)/([7][15])", Tm),
            Term("[4]/([2][3][7])", Sm),
        ),
        ("Hom12", "2w1"): (Term("1/([2][7])", Sm), Term("[3][4]/([2][7][8])", Tm)),
        ("Hom12", "w1"): (Term("-[5][12]/([6][8][15])", Tm),),
        ("End22", "2w2"): (
            Term("[3][4][5](q^2-2+q^-2)/[12]", P2),
            Term("-[3]^2[4][5][14]/([7][8][12][15])", C2),
            Term(f"[3]^2[4]^2[6][9]{f}/([2]^2[7][8][12]^2[18])", T2),
            Term("[3]^2[4]^2[6]/([2]^2[12]^2)", Y2),
            Term("[5]/([6][8])", S2),
        ),
        ("End22", "3w1"): (
            Term("[3][4]/[12]", P2),
            Term("[2][3][4]^2[5]/([8][10][12])", C2),
            Term("-[3]^4[4]^2[5]/([2]^2[10][12]^2)", T2),
            Term("-[3]^2[4]^2[6]/([2]^2[12]^2)", Y2),
            Term("-[4][5]/([2][6][10])", S2),
        ),
        ("End22", "2w1"): (
            Term("-[2][3]^2[4][5][6]/([7][8][10][12])", C2),
            Term("[3]^3[4]^2[5][6]^2/([2]^3[8][10][12]^2)", T2),
            Term("[5]/([8][10])", S2),
        ),
        ("End22", "w2"): (Term("-[3]^2[4][9]/([2]^2[12][18])", T2),),
        ("End22", "0"): (Term("[3][4][5]/([7][8][15])", C2),),
    }


# eigenvalue strings and labels, in printed order
spectral_table: dict[str, tuple[tuple[str, str], ...]] = {
    "End11": (("q^2", "2w1"), ("-q^-6", "w1"), ("-1", "w2"), ("q^-12", "0")),
    "Hom12": (("q^3", "w1+w2"), ("q^-4", "2w1"), ("-q^-12", "w1")),
    "Hom21": (("q^3", "w1+w2"), ("q^-4", "2w1"), ("-q^-12", "w1")),
    "End22": (("q^6", "2w2"), ("-1", "3w1"), ("q^-10", "2w1"), ("-q^-12", "w2"), ("q^-24", "0")),
}


# T(2, n) closed forms: (colors) -> (normalizing exponent per crossing, [(base, coefficient)])
# The first (1,1) coefficient carries a redundant [6]/[6]; it is kept as printed.
TORUS: dict[tuple[int, int], tuple[int, tuple[tuple[str, str], ...]]] = {
    (1, 1): (-12, (
        ("q^-10", "[3][6][12][15]/([4][5][6])"),
        ("-q^-12", "[7][8][15]/([3][4][5])"),
        ("-q^-18", "[2][7][12]/([4][6])"),
        ("q^-24", "1"),
    )),
    (1, 2): (0, (
        ("q^3", "[2][8][10][12][18]/([3][4][5][9])"),
        ("q^-4", "[3][12][15]/([4][5])"),
        ("-q^-12", "[2][7][12]/([4][6])"),
    )),
    (2, 2): (-24, (
        ("q^-18", "[10][11][12][21]/([3][4][5][6])"),
        ("-q^-24", "[7][11][15][18]/([5][6][9])"),
        ("q^-34", "[3][12][15]/([4][5])"),
        ("-q^-36", "[7][8][15]/([3][4][5])"),
        ("q^-48", "1"),
    )),
}


def _w4() -> Web:
    """Coloring (1,2,2,1,1): a double arc on legs 2,3 and a vertex on 1,4,5."""
    pts = _circle(5, 3.0)
    pts = pts[3:] + pts[:3]
    return web_from_drawing({"v": (0.5, -0.8)}, pts, [(1, 2, 2), (0, "v", 1), (3, "v", 1), (4, "v", 1)])


W4 = _w4()
