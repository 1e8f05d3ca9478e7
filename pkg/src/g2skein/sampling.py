"""Random webs for property tests.

Open webs are grown by stacking random 4-point boxes on nested arcs, so
every sample is planar and correctly labelled.

>>> import random
>>> w = random_closed_web(random.Random(1), max_vertices=10)
>>> w.is_closed and w.n_vertices <= 10
True
"""
from __future__ import annotations

import random

from .tables import box
from .web import VERTEX_KINDS, Web, WebSum, glue, insert, mirror

__all__ = ["random_box", "random_open_web", "random_closed_web"]

_VALID = {tuple(sorted(v)) for v in VERTEX_KINDS.values()}
_COST = {"T": 2, "Y": 2, "Sq": 4, "C": 0}


def _ok(*labels: int) -> bool:
    return tuple(sorted(labels)) in _VALID


def random_box(rng: random.Random, bl: int, br: int, budget: int) -> Web | None:
    """A random box with bottom colors ``(bl, br)`` using at most ``budget`` vertices."""
    shapes = [s for s, c in _COST.items() if c <= budget]
    rng.shuffle(shapes)
    for shape in shapes:
        opts = []
        for tl in (1, 2):
            for tr in (1, 2):
                legs = (bl, tl, tr, br)
                if shape == "C" and bl == br and tl == tr:
                    opts.append((legs, 1))
                elif shape == "T":
                    opts += [(legs, e) for e in (1, 2) if _ok(tl, tr, e) and _ok(bl, br, e)]
                elif shape == "Y":
                    opts += [(legs, e) for e in (1, 2) if _ok(tl, bl, e) and _ok(tr, br, e)]
                elif shape == "Sq":
                    for top in (1, 2):
                        for right in (1, 2):
                            for bottom in (1, 2):
                                for left in (1, 2):
                                    if (_ok(tl, top, left) and _ok(tr, top, right)
                                            and _ok(br, right, bottom) and _ok(bl, bottom, left)):
                                        opts.append((legs, (top, right, bottom, left)))
        if opts:
            legs, inner = rng.choice(opts)
            return box(shape, legs, inner)
    return None


def random_open_web(rng: random.Random, colors, max_vertices: int = 14, steps: int = 12) -> Web:
    """Nested arcs on ``colors`` with random boxes stacked on the left half."""
    from .braid import nested_arcs

    w = nested_arcs(colors)
    n = len(colors)
    used = 0
    for _ in range(steps):
        if n < 2:
            break
        i = rng.randrange(n - 1)
        s = w.coloring
        b = random_box(rng, s[i], s[i + 1], max_vertices - used)
        if b is None:
            break
        used += b.n_vertices
        w = _stack(w, b, i)
    return w


def _stack(w: Web, b: Web, i: int) -> Web:
    (x, _), = insert(WebSum.of(w), WebSum.of(b), i)
    return x


def random_closed_web(rng: random.Random, max_vertices: int = 14, max_strands: int = 3) -> Web:
    """Glue a random open web to the mirror of another with the same boundary.

    Falls back to the mirror of the first web when no partner turns up.
    """
    n = rng.randint(min(2, max_strands), max_strands)
    colors = tuple(rng.choice((1, 2)) for _ in range(n))
    w = random_open_web(rng, colors, rng.randint(0, max_vertices // 2), rng.randint(1, 8))
    partner = w
    for _ in range(20):
        v = random_open_web(rng, colors, rng.randint(0, max_vertices - w.n_vertices), rng.randint(1, 8))
        if v.coloring == w.coloring:
            partner = v
            break
    return glue(w, mirror(partner), 2 * n)
