from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from g2skein.braid import (
    BraidWord,
    TermCapExceeded,
    WritheCounts,
    act,
    bracket,
    check_r2,
    check_r3,
    close_trace,
    crossing,
    curl_factor,
    invariant,
    nested_arcs,
    torus_reference,
    torus_word,
    writhe,
)
from g2skein.qalg import RatFunc, bar
from g2skein.skein import equal, evaluate_closed, extended_registry
from g2skein.tables import W4
from g2skein.web import WebSum, elementary

DIM = {1: 7, 2: 14}


@st.composite
def braids(draw, max_letters: int = 4):
    n = draw(st.sampled_from((2, 3)))
    if n == 2:
        colors = draw(st.sampled_from(((1, 1), (2, 2), (1, 2), (2, 1))))
    else:
        colors = draw(st.sampled_from(((1, 1, 1), (2, 2, 2))))
    letters = draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=max_letters))
    b = BraidWord(colors, tuple(letters))
    assume(b.top_colors() == b.colors)
    return b


def components(b: BraidWord) -> list[int]:
    perm = list(range(b.strands))
    for i, _ in b.letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    seen, out = set(), []
    for s in range(b.strands):
        if s in seen:
            continue
        out.append(b.colors[s])
        while s not in seen:
            seen.add(s)
            s = perm[s]
    return out


# -- braid words ---------------------------------------------------------------------------


def test_parse_and_print():
    b = BraidWord.parse("1 -2  1", (1, 1, 2))
    assert b.letters == ((1, 1), (2, -1), (1, 1))
    assert str(b) == "1 -2 1"
    assert b.strands == 3
    assert b.top_colors() == (2, 1, 1)


@pytest.mark.parametrize("text, colors", [("0", (1, 1)), ("x", (1, 1)), ("2", (1, 1)), ("1", (1, 3)), ("", ())])
def test_parse_errors(text, colors):
    with pytest.raises(ValueError):
        BraidWord.parse(text, colors)


def test_writhe_counts_by_color():
    b = BraidWord.parse("1 1 -1 1", (2, 2))
    assert writhe(b) == WritheCounts(0, 2)
    assert writhe(BraidWord.parse("1 1", (1, 2))) == WritheCounts(0, 0)


def test_crossing_colorings():
    for c1 in (1, 2):
        for c2 in (1, 2):
            x = crossing(c1, c2)
            assert x.coloring == (c1, c2, c1, c2)
            assert crossing(c1, c2, -1) == WebSum(((w, bar(c)) for w, c in x), x.coloring)


def test_nested_arcs():
    w = nested_arcs((1, 2, 2))
    assert w.coloring == (1, 2, 2, 2, 2, 1)
    assert w.n_vertices == 0


# -- framing and Reidemeister moves ----------------------------------------------------------


@pytest.mark.parametrize("color, sign, k", [(1, 1, 12), (1, -1, -12), (2, 1, 24), (2, -1, -24)])
def test_kinks(color, sign, k):
    assert curl_factor(color, sign) == RatFunc.q(k)


@pytest.mark.parametrize("colors", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_r2(colors):
    assert check_r2(colors)


@pytest.mark.parametrize("colors", [(1, 1, 1), (1, 1, 2)])
def test_r3(colors):
    assert check_r3(colors)


def test_braid_action_on_w4():
    reg = extended_registry()
    assert W4.coloring == (1, 2, 2, 1, 1)
    assert equal(act((4, 1), W4, reg), -RatFunc.q(-6) * WebSum.of(W4), reg)
    assert equal(act(-4, W4, reg), -RatFunc.q(6) * WebSum.of(W4), reg)


def test_act_range_check():
    with pytest.raises(ValueError):
        act(5, W4)


# -- link invariants ----------------------------------------------------------------------


def test_unknots():
    assert invariant(BraidWord((1,))) == evaluate_closed(elementary("loop1"))
    assert invariant(BraidWord((1,))).eval_at(1) == 7
    assert invariant(BraidWord((2,))).eval_at(1) == 14
    # stabilization leaves the invariant unchanged
    for s in ("1", "-1"):
        assert invariant(BraidWord.parse(s, (1, 1))) == invariant(BraidWord((1,)))
        assert invariant(BraidWord.parse(s, (2, 2))) == invariant(BraidWord((2,)))


@pytest.mark.parametrize(
    "colors, n", [(c, n) for c in ((1, 1), (2, 2), (1, 2)) for n in range(5) if c != (1, 2) or n % 2 == 0]
)
def test_torus_links(colors, n):
    assert invariant(torus_word(n, colors)) == torus_reference(n, colors)


def test_torus_reference_at_one():
    assert [torus_reference(0, c).eval_at(1) for c in ((1, 1), (2, 2), (1, 2))] == [49, 196, 98]


def test_direct_expansion_matches_incremental():
    b = BraidWord.parse("1 1 1", (1, 1))
    assert evaluate_closed(close_trace(b)) == bracket(b)


def test_term_cap(monkeypatch):
    monkeypatch.setenv("G2SKEIN_TERM_CAP", "3")
    with pytest.raises(TermCapExceeded):
        close_trace(BraidWord.parse("1 1", (2, 2)))


def test_closure_needs_matching_colors():
    with pytest.raises(ValueError):
        invariant(BraidWord.parse("1", (1, 2)))


@given(braids())
@settings(max_examples=25)
def test_mirror_braid_gives_bar(b):
    m = BraidWord(b.colors, tuple((i, -s) for i, s in b.letters))
    assert invariant(m) == bar(invariant(b))


@given(braids())
@settings(max_examples=25)
def test_classical_limit_is_product_of_dimensions(b):
    want = 1
    for c in components(b):
        want *= DIM[c]
    assert invariant(b).eval_at(1) == want


@given(braids(max_letters=3))
@settings(max_examples=20)
def test_conjugation_invariance(b):
    assume(b.letters)
    rotated = BraidWord(b.colors, b.letters[1:] + b.letters[:1])
    assume(rotated.top_colors() == rotated.colors and len(set(b.colors)) == 1)
    assert invariant(rotated) == invariant(b)


@given(braids(max_letters=3))
@settings(max_examples=20)
def test_invariant_is_laurent(b):
    assert invariant(b).is_laurent()
