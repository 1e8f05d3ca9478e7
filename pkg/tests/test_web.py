from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2skein.dims import invariant_dimension, weights
from g2skein.sampling import random_closed_web, random_open_web
from g2skein.skein import default_registry, extended_registry
from g2skein.tables import box
from g2skein.web import (
    Web,
    WebError,
    WebSum,
    canonical_key,
    elementary,
    faces,
    glue,
    insert,
    mirror,
    rotate,
    tensor,
)

seeds = st.integers(0, 10**6)
colorings = st.lists(st.sampled_from((1, 2)), min_size=2, max_size=4).map(tuple)


def open_web(seed: int, colors=None) -> Web:
    rng = random.Random(seed)
    colors = colors or tuple(rng.choice((1, 2)) for _ in range(rng.randint(2, 4)))
    return random_open_web(rng, colors, max_vertices=8, steps=6)


# -- elementary webs ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "kind, coloring, nv",
    [
        ("empty", (), 0),
        ("single", (1, 1), 0),
        ("double", (2, 2), 0),
        ("cap1", (1, 1), 0),
        ("vertex111", (1, 1, 1), 1),
        ("vertex211", (2, 1, 1), 1),
        ("vertex222", (2, 2, 2), 1),
        ("loop1", (), 0),
        ("loop2", (), 0),
    ],
)
def test_elementary(kind, coloring, nv):
    w = elementary(kind)
    w.validate()
    assert w.coloring == coloring
    assert w.n_vertices == nv


def test_elementary_loops_and_emptiness():
    assert elementary("empty").is_empty
    assert elementary("loop1").loops == (1, 0)
    assert elementary("loop2").is_closed and not elementary("loop2").is_empty
    with pytest.raises(WebError):
        elementary("pentagon")


# -- spider operations -------------------------------------------------------------------


def test_tensor_concatenates_colorings():
    w = tensor(elementary("vertex211"), elementary("double"))
    assert w.coloring == (2, 1, 1, 2, 2)
    assert w.n_vertices == 1


def test_glue_closes_vertex_pair():
    v = elementary("vertex111")
    theta = glue(v, mirror(v), 3)
    assert theta.is_closed and theta.n_vertices == 2
    assert theta.n_edges == 3


def test_glue_color_mismatch():
    with pytest.raises(WebError):
        glue(elementary("vertex211"), elementary("vertex222"), 2)


@given(seeds)
def test_rotation_is_cyclic(seed):
    w = open_web(seed)
    n = len(w.coloring)
    assert rotate(w, n) == w
    assert rotate(rotate(w, 1), n - 1) == w
    assert rotate(w, 1).coloring == w.coloring[1:] + w.coloring[:1]


@given(seeds)
def test_mirror_is_involution(seed):
    w = open_web(seed)
    assert mirror(mirror(w)) == w
    assert mirror(w).coloring == tuple(reversed(w.coloring))
    mirror(w).validate()


@given(seeds)
def test_websum_operations_are_linear(seed):
    w = open_web(seed, (1, 1))
    c = box("C", (1, 1, 1, 1))
    if w.coloring != (1, 1, 1, 1) or w in (c, rotate(c, 1)):
        w = box("T", (1, 1, 1, 1), 2)
    x = WebSum([(w, 2), (c, 3)])
    r = rotate(x, 1)
    for v in (w, c):
        assert r.coeff(rotate(v, 1)) == x.coeff(v)
    assert (x - x).is_zero()
    assert mirror(mirror(x)) == x


def test_insert_replaces_pair():
    x = elementary("vertex111")
    t = box("T", (1, 2, 1, 1), 1)
    y = insert(x, t, 1)
    assert y.coloring == (1, 2, 1)
    with pytest.raises(WebError):
        insert(x, box("P", (2, 2, 2, 2)), 0)


# -- canonical keys ----------------------------------------------------------------------


@given(seeds)
def test_key_is_relabeling_invariant(seed):
    w = open_web(seed)
    # JSON renumbers every node and dart
    v = Web.from_json(w.dumps())
    assert canonical_key(v) == canonical_key(w)
    assert v == w and hash(v) == hash(w)


@given(seeds)
def test_closed_key_ignores_base_point(seed):
    w = random_closed_web(random.Random(seed), max_vertices=10)
    assert w.is_closed
    assert Web.from_json(w.dumps()) == w


def test_key_separates_non_isotopic_webs():
    t = box("T", (1, 1, 1, 1), 1)
    y = box("Y", (1, 1, 1, 1), 1)
    assert t != y
    assert rotate(t, 1) == y
    assert box("T", (1, 1, 1, 1), 2) != t


def test_squares_differ_by_inner_labels():
    a = box("Sq", (1, 1, 1, 1), (1, 1, 1, 1))
    b = box("Sq", (1, 1, 1, 1), (2, 1, 1, 1))
    c = box("Sq", (1, 1, 1, 1), (1, 2, 1, 1))
    assert len({a, b, c}) == 3
    assert c in {rotate(b, k) for k in range(4)}


# -- JSON ---------------------------------------------------------------------------------


def test_json_round_trip_with_arcs_and_loops():
    w = tensor(elementary("single"), elementary("vertex222"))
    w = Web(w.kinds, w.rot, w.twin, w.label, w.boundary, (2, 1))
    data = json.loads(w.dumps())
    assert data["arcs"] == [[0, 1, 1]]
    assert data["loops"] == {"1": 2, "2": 1}
    assert Web.from_json(data) == w


def _vertex_json(order):
    return {
        "vertices": [{"kind": "V111"}],
        "half_edges": [{"twin": {"boundary": b}, "next": (i + 1) % 3, "vertex": 0} for i, b in enumerate(order)],
        "edge_labels": [1, 1, 1],
    }


def test_json_orientation_is_checked():
    # counter-clockwise darts must meet the boundary in clockwise order
    assert Web.from_json(_vertex_json([2, 1, 0])).coloring == (1, 1, 1)
    with pytest.raises(WebError):
        Web.from_json(_vertex_json([0, 1, 2]))


@pytest.mark.parametrize(
    "patch",
    [
        lambda d: d.update(edge_labels=[1, 1]),
        lambda d: d["half_edges"][0].update(twin={"boundary": 1}),
        lambda d: d["half_edges"][0].update(next=0),
        lambda d: d.update(vertices=[{"kind": "V222"}]),
        lambda d: d.update(edge_labels=[1, 1, 3]),
    ],
)
def test_json_validation_errors(patch):
    d = _vertex_json([2, 1, 0])
    patch(d)
    with pytest.raises(WebError):
        Web.from_json(d)


# -- faces --------------------------------------------------------------------------------


@given(seeds)
def test_faces_satisfy_euler(seed):
    w = random_closed_web(random.Random(seed), max_vertices=12)
    fs = [f for f in faces(w) if f.darts]
    assert sum(f.n_sides for f in fs) == 2 * (w.n_edges - sum(w.loops))


def test_square_has_one_inner_four_face():
    fs = faces(box("Sq", (1, 1, 1, 1), 1))
    inner = [f for f in fs if not f.outer]
    assert [f.n_sides for f in inner] == [4]
    assert set(inner[0].corners) == {"V111"}


# -- registry and dimensions --------------------------------------------------------------


def test_default_registry_sizes():
    assert default_registry().sizes() == {(1, 1, 1, 1): 4, (1, 2, 1, 2): 3, (2, 2, 2, 2): 5}


def test_registry_sizes_match_invariant_dimensions():
    reg = extended_registry()
    for s, n in reg.sizes().items():
        assert n == invariant_dimension(s), s
        assert len({w.key() for w in reg[s]}) == n


def test_registry_rejects_duplicates():
    reg = default_registry()
    w = reg[(1, 1, 1, 1)][0]
    with pytest.raises(WebError):
        reg.register((1, 1, 1, 1), [w, w])
    with pytest.raises(WebError):
        reg.register((2, 2, 2, 2), [w])


@pytest.mark.parametrize("n, want", list(enumerate([1, 0, 1, 1, 4, 10, 35, 120])))
def test_invariant_dimension_powers_of_seven(n, want):
    assert invariant_dimension((1,) * n) == want


def test_invariant_dimension_mixed():
    assert invariant_dimension((1, 2, 1, 2)) == 3
    assert invariant_dimension((1, 2, 2)) == 0
    assert invariant_dimension((2, 2)) == 1
    assert invariant_dimension((2, 2, 2)) == 1


def test_weights_have_right_sizes():
    assert sum(weights(1).values()) == 7
    assert sum(weights(2).values()) == 14


@given(colorings)
def test_invariant_dimension_is_rotation_invariant(s):
    for k in range(len(s)):
        assert invariant_dimension(s[k:] + s[:k]) == invariant_dimension(s)
