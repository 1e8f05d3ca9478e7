"""Projectors onto irreducible summands and spectral forms of the crossings.

Four-point webs are read as maps from the bottom pair (BL, BR) to the top
pair (TL, TR). ``End11`` and ``End22`` are endomorphisms of two single or two
double strands. ``Hom12`` maps (single, double) at the bottom to (double,
single) at the top and ``Hom21`` the other way round.

>>> p = projector("End11", "0")
>>> equal(compose(p, p), p)
True
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import tables
from .braid import BraidWord, apply_word, crossing, nested_arcs
from .qalg import RatFunc, parse_ratfunc
from .skein import Report, Undecided, equal, evaluate_closed, extended_registry, run_case, to_basis
from .web import WebError, WebSum, _Builder, insert

__all__ = [
    "SPACES",
    "LABELS",
    "ProjectorEntry",
    "projector",
    "identity",
    "compose",
    "trace",
    "verify_projectors",
    "choose_reading",
    "spectral",
    "spectral_sum",
    "verify_spectral_vs_crossing",
    "cr_power",
    "quantum_dimension",
    "cabled_crossing_2w1",
    "verify_cabled",
    "entry",
]

SPACES = {"End11": (1, 1), "Hom12": (1, 2), "Hom21": (2, 1), "End22": (2, 2)}

LABELS = {
    "End11": ("2w1", "w1", "w2", "0"),
    "Hom12": ("w1+w2", "2w1", "w1"),
    "Hom21": ("w1+w2", "2w1", "w1"),
    "End22": ("2w2", "3w1", "2w1", "w2", "0"),
}

DEFAULT_READING = "bracket"


@dataclass(frozen=True)
class ProjectorEntry:
    space: str
    label: str
    coefficients: tuple[str, ...]
    values: tuple[RatFunc, ...]
    websum: WebSum = field(compare=False)


def _check(space: str, label: str | None = None) -> None:
    if space not in SPACES:
        raise KeyError(f"unknown space {space!r}")
    if label is not None and label not in LABELS[space]:
        raise KeyError(f"unknown projector {space}[{label}]")


def identity(c1: int, c2: int) -> WebSum:
    """Two vertical strands with colors ``c1``, ``c2``."""
    return WebSum.of(tables.box("P", (c1, c1, c2, c2)))


def compose(x, y) -> WebSum:
    """``y`` stacked on top of ``x`` (apply ``x`` first), rewritten in the basis."""
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    y = y if isinstance(y, WebSum) else WebSum.of(y)
    if (x.coloring[1], x.coloring[2]) != (y.coloring[0], y.coloring[3]):
        raise WebError(f"cannot stack {y.coloring} on {x.coloring}")
    return to_basis(insert(x, y, 1), extended_registry())


def trace(x) -> RatFunc:
    """Join TL to BL and TR to BR, then evaluate."""
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    bl, tl, tr, br = x.coloring
    if (bl, br) != (tl, tr):
        raise WebError(f"trace needs equal top and bottom colors, got {x.coloring}")
    out = WebSum.zero(())
    for w, c in x:
        bld = _Builder()
        nm, _ = bld.absorb(w)
        a, b, d, e = (nm[i] for i in w.boundary)
        bld.splice(b, a)
        bld.splice(d, e)
        out.add_term(bld.freeze([]), c)
    return evaluate_closed(out)


@lru_cache(maxsize=None)
def _table(reading: str) -> dict:
    return tables.projector_table(reading)


@lru_cache(maxsize=None)
def projector(space: str, label: str, reading: str = DEFAULT_READING) -> WebSum:
    """The projector ``space[label]`` as a web sum.

    ``Hom21`` entries are obtained by conjugating ``Hom12`` with crossings.

    >>> projector("End11", "w2").coloring
    (1, 1, 1, 1)
    """
    _check(space, label)
    if space == "Hom21":
        # R21 . P12 . R12^-1, bottom to top
        p = compose(crossing(2, 1, -1), projector("Hom12", label, reading))
        return compose(p, crossing(2, 1, 1))
    out = WebSum.zero(_table(reading)[(space, label)][0].web.coloring)
    for t in _table(reading)[(space, label)]:
        out.add_term(t.web, t.value)
    return out


def entry(space: str, label: str, reading: str = DEFAULT_READING) -> ProjectorEntry:
    _check(space, label)
    p = projector(space, label, reading)
    if space == "Hom21":
        return ProjectorEntry(space, label, (), tuple(c for _, c in p), p)
    terms = _table(reading)[(space, label)]
    return ProjectorEntry(space, label, tuple(t.coeff for t in terms), tuple(t.value for t in terms), p)


def _partner(space: str) -> str:
    return {"Hom12": "Hom21", "Hom21": "Hom12"}.get(space, space)


def _idempotent(space: str, label: str, reading: str) -> WebSum:
    """``P`` itself on End spaces, ``P21 P12`` (an End of the bottom pair) on Hom spaces."""
    p = projector(space, label, reading)
    if space.startswith("End"):
        return p
    return compose(p, projector(_partner(space), label, reading))


def verify_projectors(reading: str = DEFAULT_READING, spaces: Sequence[str] = tuple(SPACES)) -> Report:
    """Idempotency, orthogonality, completeness and the Hom sandwich identities."""
    rep = Report()
    for space in spaces:
        labels = LABELS[space]
        c1, c2 = SPACES[space]
        if space.startswith("End"):
            for a in labels:
                for b in labels:
                    want = projector(space, a, reading) if a == b else WebSum.zero((c1, c1, c2, c2))
                    run_case(rep, f"{space} [{a}][{b}]", lambda: equal(
                        compose(projector(space, a, reading), projector(space, b, reading)), want))
        else:
            other = _partner(space)
            for a in labels:
                for b in labels:
                    p = projector(space, a, reading)
                    want = p if a == b else WebSum.zero(p.coloring)
                    run_case(rep, f"{space} [{a}] {other}[{b}] {space}[{a}]", lambda: equal(
                        compose(compose(p, projector(other, b, reading)), p), want))
        total = WebSum.zero((c1, c1, c2, c2))
        for a in labels:
            total = total + _idempotent(space, a, reading)
        run_case(rep, f"{space} completeness", lambda: equal(total, identity(c1, c2)))
    return rep


def choose_reading() -> tuple[str, dict[str, bool]]:
    """Test each reading of the ambiguous factor by idempotency of the top projector."""
    results = {}
    for name in tables.P22_READINGS:
        p = projector("End22", "2w2", name)
        results[name] = equal(compose(p, p), p)
    passing = [k for k, ok in results.items() if ok]
    if len(passing) != 1:
        raise Undecided(f"expected exactly one passing reading, got {results}")
    return passing[0], results


# -- spectral forms ---------------------------------------------------------------------------


def spectral(space: str) -> tuple[tuple[RatFunc, str], ...]:
    """Eigenvalue and projector label pairs of the crossing on ``space``.

    >>> [str(v) for v, _ in spectral("End11")]
    ['q^2', '-q^-6', '-1', 'q^-12']
    """
    _check(space)
    return tuple((parse_ratfunc(v), lab) for v, lab in tables.spectral_table[space])


def spectral_sum(space: str, n: int = 1, reading: str = DEFAULT_READING) -> WebSum:
    """``sum(lambda**n * P[lambda])`` over the labels of ``space``."""
    out = WebSum.zero(projector(space, LABELS[space][0], reading).coloring)
    for lam, lab in spectral(space):
        out = out + (lam ** n) * projector(space, lab, reading)
    return out


def verify_spectral_vs_crossing(reading: str = DEFAULT_READING) -> Report:
    """Compare each spectral sum with the crossing expansion, coefficient by coefficient."""
    rep = Report()
    reg = extended_registry()
    for space, (c1, c2) in SPACES.items():
        a = to_basis(spectral_sum(space, 1, reading), reg)
        b = to_basis(crossing(c1, c2, 1), reg)
        ok = a == b
        detail = "" if ok else f"spectral {[str(c) for _, c in a]} vs crossing {[str(c) for _, c in b]}"
        rep.add(f"{space} spectral = crossing", "pass" if ok else "fail", detail)
    return rep


def cr_power(space: str, n: int, reading: str = DEFAULT_READING) -> WebSum:
    """The ``n``-th power of the crossing on ``space`` from its spectral form.

    On ``Hom12``/``Hom21`` only even ``n`` are endomorphisms; the result is
    ``sum(lambda**n * P21[lambda] P12[lambda])`` on the bottom pair.
    """
    _check(space)
    if space.startswith("End"):
        return to_basis(spectral_sum(space, n, reading), extended_registry())
    if n % 2:
        raise ValueError("odd powers of a mixed crossing are not endomorphisms")
    c1, c2 = SPACES[space]
    out = WebSum.zero((c1, c1, c2, c2))
    for lam, lab in spectral(space):
        out = out + (lam ** n) * _idempotent(space, lab, reading)
    return out


def quantum_dimension(space: str, label: str, reading: str = DEFAULT_READING) -> RatFunc:
    """Trace of the projector (of ``P21 P12`` on Hom spaces)."""
    _check(space, label)
    return trace(_idempotent(space, label, reading))


# -- cabled crossing ------------------------------------------------------------------------


@dataclass
class CabledCrossing:
    """A single strand crossing a two-strand cable carrying the 2w1 projector.

    ``terms`` lists, per projector term, its coefficient and the tangle it
    contributes. Tangles on three strands are stored with their bottom ends
    bent up to the right (see :func:`g2skein.braid.nested_arcs`).
    """

    terms: list[tuple[str, RatFunc, WebSum]]
    total: WebSum
    projected_top: WebSum


_CABLE = BraidWord((1, 1, 1), ((2, 1), (1, 1)))


def cabled_crossing_2w1(reading: str = DEFAULT_READING) -> CabledCrossing:
    arcs = WebSum.of(nested_arcs((1, 1, 1)))
    terms = []
    total = WebSum.zero(arcs.coloring)
    for t in _table(reading)[("End11", "2w1")]:
        x = apply_word(_CABLE, insert(arcs, t.web, 0))
        terms.append((t.coeff, t.value, x))
        total = total + t.value * x
    top = insert(apply_word(_CABLE, arcs), projector("End11", "2w1", reading), 1)
    return CabledCrossing(terms, total, top)


def verify_cabled(reading: str = DEFAULT_READING) -> Report:
    """The projector slides through the crossing and absorbs a second copy."""
    rep = Report()
    cc = cabled_crossing_2w1(reading)
    p = projector("End11", "2w1", reading)
    run_case(rep, "cable: projector slides", lambda: equal(cc.total, cc.projected_top, span_from_terms=True))
    run_case(rep, "cable: absorption", lambda: equal(insert(cc.total, p, 1), cc.total, span_from_terms=True))
    return rep
