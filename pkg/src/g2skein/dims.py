"""Dimensions of invariant spaces from G2 weight multiplicities.

Used only to decide when a set of webs spans a web space: the space for the
boundary coloring ``s`` has the dimension of the invariants in the tensor
product of the 7- and 14-dimensional representations listed by ``s``. The
count uses the Weyl denominator identity: the trivial multiplicity in ``M`` is
``sum(sign(w) * mult_M(rho - w(rho)))`` over the Weyl group.

>>> invariant_dimension((1, 1, 1, 1)), invariant_dimension((2, 2, 2, 2))
(4, 5)
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

__all__ = ["invariant_dimension", "weights"]

# Coordinates are in the fundamental-weight basis; alpha1 is the short root.
_ALPHA = ((2, -1), (-3, 2))
_SHORT = [(1, 0), (-1, 1), (2, -1)]
_LONG = [(0, 1), (3, -1), (-3, 2)]


def _neg(v):
    return (-v[0], -v[1])


@lru_cache(maxsize=None)
def weights(label: int) -> Counter:
    """Weight multiset of the 7-dimensional (1) or 14-dimensional (2) module."""
    if label == 1:
        ws = _SHORT + [_neg(v) for v in _SHORT] + [(0, 0)]
    elif label == 2:
        roots = _SHORT + _LONG
        ws = roots + [_neg(v) for v in roots] + [(0, 0), (0, 0)]
    else:
        raise ValueError(label)
    return Counter(ws)


def _reflect(i: int, v):
    a = _ALPHA[i]
    return (v[0] - v[i] * a[0], v[1] - v[i] * a[1])


@lru_cache(maxsize=None)
def _weyl_orbit_rho() -> tuple:
    """Pairs ``(w(rho), sign(w))`` over the 12 Weyl group elements."""
    seen = {(1, 1): 1}
    todo = [(1, 1)]
    while todo:
        v = todo.pop()
        for i in (0, 1):
            u = _reflect(i, v)
            if u not in seen:
                seen[u] = -seen[v]
                todo.append(u)
    return tuple(seen.items())


@lru_cache(maxsize=None)
def _tensor_weights(coloring: tuple[int, ...]) -> Counter:
    acc = Counter({(0, 0): 1})
    for c in coloring:
        nxt: Counter = Counter()
        for u, m in acc.items():
            for v, n in weights(c).items():
                nxt[(u[0] + v[0], u[1] + v[1])] += m * n
        acc = nxt
    return acc


def invariant_dimension(coloring) -> int:
    """Dimension of the invariants in the tensor product labelled by ``coloring``."""
    m = _tensor_weights(tuple(coloring))
    return sum(sign * m.get((1 - w[0], 1 - w[1]), 0) for w, sign in _weyl_orbit_rho())
