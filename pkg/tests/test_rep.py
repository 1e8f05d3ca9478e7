from __future__ import annotations

from fractions import Fraction

import pytest
from oracles import at, quantum_dimension as weyl

from g2skein import tables
from g2skein.braid import crossing
from g2skein.qalg import RatFunc, parse_ratfunc
from g2skein.rep import (
    LABELS,
    SPACES,
    choose_reading,
    compose,
    cr_power,
    entry,
    identity,
    projector,
    quantum_dimension,
    spectral,
    spectral_sum,
    trace,
    verify_cabled,
    verify_projectors,
    verify_spectral_vs_crossing,
)
from g2skein.skein import equal, extended_registry, to_basis
from g2skein.tables import box
from g2skein.web import WebError, WebSum

HIGHEST = {"0": (0, 0), "w1": (1, 0), "w2": (0, 1), "2w1": (2, 0), "3w1": (3, 0), "2w2": (0, 2), "w1+w2": (1, 1)}


def test_exactly_one_reading_is_idempotent():
    reading, results = choose_reading()
    assert sorted(results) == sorted(tables.P22_READINGS)
    assert sum(results.values()) == 1
    assert results[reading]


@pytest.mark.parametrize("space", list(SPACES))
def test_projector_algebra(space):
    rep = verify_projectors(spaces=(space,))
    assert rep.ok, rep.text()


def test_idempotent_and_orthogonal_directly():
    p, q = projector("End22", "2w2"), projector("End22", "w2")
    assert equal(compose(p, p), p)
    assert equal(compose(p, q), WebSum.zero((2, 2, 2, 2)))


def test_identity_trace():
    assert trace(identity(1, 1)).eval_at(1) == 49
    assert trace(identity(1, 2)).eval_at(1) == 98


@pytest.mark.parametrize("space, dims", [
    ("End11", [27, 7, 14, 1]),
    ("Hom12", [64, 27, 7]),
    ("Hom21", [64, 27, 7]),
    ("End22", [77, 77, 27, 14, 1]),
])
def test_quantum_dimensions_at_one(space, dims):
    assert [quantum_dimension(space, lab).eval_at(1) for lab in LABELS[space]] == dims


@pytest.mark.parametrize("space", list(SPACES))
def test_quantum_dimensions_match_weyl_formula(space):
    for lab in LABELS[space]:
        v = quantum_dimension(space, lab)
        for q0 in (Fraction(2), Fraction(5, 3)):
            assert v.eval_at(q0) == at(weyl(*HIGHEST[lab]), q0), (space, lab)


def test_spectral_sums_reproduce_crossings():
    rep = verify_spectral_vs_crossing()
    assert rep.ok, rep.text()


def test_parallel_coefficient_for_single_strands():
    x = to_basis(spectral_sum("End11"), extended_registry())
    assert x.coeff(box("P", (1, 1, 1, 1))) == parse_ratfunc("q^3/[2]")


def test_spectral_eigenvalues():
    assert [str(v) for v, _ in spectral("End11")] == ["q^2", "-q^-6", "-1", "q^-12"]
    assert {lab for _, lab in spectral("End22")} == set(LABELS["End22"])


@pytest.mark.parametrize("space", ["End11", "End22"])
def test_powers_of_the_crossing(space):
    c1, c2 = SPACES[space]
    reg = extended_registry()
    assert equal(cr_power(space, 0), identity(c1, c2))
    x = crossing(c1, c2)
    assert equal(cr_power(space, 2), compose(x, x))
    assert equal(cr_power(space, -1), to_basis(crossing(c1, c2, -1), reg))


def test_mixed_square():
    assert equal(cr_power("Hom12", 2), compose(crossing(1, 2), crossing(2, 1)))
    with pytest.raises(ValueError):
        cr_power("Hom12", 1)


def test_cabled_crossing():
    rep = verify_cabled()
    assert rep.ok, rep.text()


def test_entries_keep_printed_coefficients():
    e = entry("End11", "2w1")
    assert len(e.coefficients) == len(e.values) > 0
    assert all(isinstance(v, RatFunc) for v in e.values)
    assert entry("Hom21", "w1").coefficients == ()


def test_bad_names():
    with pytest.raises(KeyError):
        projector("End33", "0")
    with pytest.raises(KeyError):
        projector("End11", "3w1")
    with pytest.raises(WebError):
        compose(projector("End11", "0"), projector("End22", "0"))
