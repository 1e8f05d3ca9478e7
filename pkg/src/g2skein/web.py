"""Planar G2 webs as combinatorial maps.

A web is a rotation system: internal trivalent vertices (``V111``, ``V211``,
``V222``), degree-one boundary nodes, and half-edges ("darts") carrying an edge
label (1 = single, 2 = double). Around every node the darts are listed in
counter-clockwise order. Boundary nodes are listed clockwise from the base
point. Free loops carry no vertex and are kept as counts per label.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .qalg import RatFunc

__all__ = [
    "SINGLE",
    "DOUBLE",
    "VERTEX_KINDS",
    "Web",
    "WebSum",
    "BasisRegistry",
    "WebError",
    "elementary",
    "tensor",
    "insert",
    "glue",
    "rotate",
    "mirror",
    "canonical_key",
    "faces",
    "Face",
    "web_from_drawing",
]

SINGLE, DOUBLE = 1, 2
BOUNDARY = "B"
VERTEX_KINDS = {"V111": (1, 1, 1), "V211": (1, 1, 2), "V222": (2, 2, 2)}


class WebError(ValueError):
    """Malformed web or incompatible operation."""


def vertex_kind(labels: Iterable[int]) -> str:
    key = tuple(sorted(labels))
    for kind, sig in VERTEX_KINDS.items():
        if sig == key:
            return kind
    raise WebError(f"no trivalent vertex with edge labels {key}")


class _Builder:
    """Mutable scratch space used to assemble and rewrite webs."""

    def __init__(self):
        self.kind: list[str | None] = []
        self.rot: list[list[int]] = []
        self.twin: list[int] = []
        self.label: list[int] = []
        self.node: list[int] = []
        self.alive: list[bool] = []
        self.loops = [0, 0]

    def add_node(self, kind: str) -> int:
        self.kind.append(kind)
        self.rot.append([])
        return len(self.kind) - 1

    def add_dart(self, n: int, label: int) -> int:
        d = len(self.twin)
        self.twin.append(-1)
        self.label.append(label)
        self.node.append(n)
        self.alive.append(True)
        self.rot[n].append(d)
        return d

    def connect(self, a: int, b: int) -> None:
        if self.label[a] != self.label[b]:
            raise WebError("cannot join a single edge to a double edge")
        self.twin[a] = b
        self.twin[b] = a

    def absorb(self, w: Web) -> tuple[list[int], list[int]]:
        """Copy ``w`` in; return (node map, dart map)."""
        nmap = [self.add_node(k) for k in w.kinds]
        dmap = [0] * len(w.twin)
        for n, darts in enumerate(w.rot):
            for d in darts:
                dmap[d] = self.add_dart(nmap[n], w.label[d])
        for d, t in enumerate(w.twin):
            self.twin[dmap[d]] = dmap[t]
        self.loops[0] += w.loops[0]
        self.loops[1] += w.loops[1]
        return nmap, dmap

    def kill_node(self, n: int) -> None:
        for d in self.rot[n]:
            self.alive[d] = False
        self.rot[n] = []
        self.kind[n] = None

    def splice(self, a: int, b: int) -> None:
        """Identify two degree-one nodes, joining the strands that end at them."""
        (pa,) = self.rot[a]
        (pb,) = self.rot[b]
        if self.label[pa] != self.label[pb]:
            raise WebError("label mismatch while gluing")
        ta, tb = self.twin[pa], self.twin[pb]
        if ta == pb:
            self.loops[self.label[pa] - 1] += 1
        else:
            self.connect(ta, tb)
        self.kill_node(a)
        self.kill_node(b)

    def freeze(self, boundary: Sequence[int]) -> Web:
        nodes = [n for n, k in enumerate(self.kind) if k is not None]
        nidx = {n: i for i, n in enumerate(nodes)}
        darts = [d for n in nodes for d in self.rot[n]]
        didx = {d: i for i, d in enumerate(darts)}
        bset = set(boundary)
        for n in nodes:
            if self.kind[n] == BOUNDARY and n not in bset:
                raise WebError("dangling boundary node not listed in boundary")
        return Web(
            kinds=tuple(self.kind[n] for n in nodes),
            rot=tuple(tuple(didx[d] for d in self.rot[n]) for n in nodes),
            twin=tuple(didx[self.twin[d]] for d in darts),
            label=tuple(self.label[d] for d in darts),
            boundary=tuple(nidx[n] for n in boundary),
            loops=tuple(self.loops),
        )


@dataclass(frozen=True, eq=False)
class Web:
    """Immutable planar web.

    ``kinds[n]`` is the node type ('V111', 'V211', 'V222' or 'B'), ``rot[n]``
    the darts at node n in counter-clockwise order, ``twin`` the edge
    involution, ``label`` the edge label of each dart, ``boundary`` the boundary
    nodes clockwise from the base point and ``loops`` the free (single, double)
    loop counts.
    """

    kinds: tuple[str, ...] = ()
    rot: tuple[tuple[int, ...], ...] = ()
    twin: tuple[int, ...] = ()
    label: tuple[int, ...] = ()
    boundary: tuple[int, ...] = ()
    loops: tuple[int, int] = (0, 0)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        node = [0] * len(self.twin)
        for n, darts in enumerate(self.rot):
            for d in darts:
                node[d] = n
        object.__setattr__(self, "node", tuple(node))

    @property
    def coloring(self) -> tuple[int, ...]:
        return tuple(self.label[self.rot[b][0]] for b in self.boundary)

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    @property
    def is_empty(self) -> bool:
        return not self.kinds and self.loops == (0, 0)

    @property
    def n_vertices(self) -> int:
        return sum(1 for k in self.kinds if k != BOUNDARY)

    @property
    def n_edges(self) -> int:
        return len(self.twin) // 2 + sum(self.loops)

    def size(self) -> tuple[int, int]:
        """(edge count, vertex count): the measure every reducing rule shrinks."""
        return (self.n_edges, self.n_vertices)

    def next_ccw(self, d: int) -> int:
        darts = self.rot[self.node[d]]
        return darts[(darts.index(d) + 1) % len(darts)]

    def face_step(self, d: int) -> int:
        return self.next_ccw(self.twin[d])

    def key(self) -> tuple:
        k = self._cache.get("key")
        if k is None:
            k = _canonical(self)
            self._cache["key"] = k
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, Web) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        kinds = [k for k in self.kinds if k != BOUNDARY]
        return f"Web(coloring={self.coloring}, vertices={kinds}, loops={self.loops})"

    def validate(self) -> None:
        """Check degree, label, involution and planarity invariants."""
        nd = len(self.twin)
        for d, t in enumerate(self.twin):
            if not 0 <= t < nd or t == d or self.twin[t] != d:
                raise WebError(f"twin is not a fixed-point-free involution at {d}")
            if self.label[d] != self.label[t] or self.label[d] not in (1, 2):
                raise WebError(f"bad edge label at dart {d}")
        for n, kind in enumerate(self.kinds):
            labels = [self.label[d] for d in self.rot[n]]
            if kind == BOUNDARY:
                if len(labels) != 1:
                    raise WebError("boundary node must have degree one")
            elif kind not in VERTEX_KINDS or tuple(sorted(labels)) != VERTEX_KINDS[kind]:
                raise WebError(f"vertex {n} of kind {kind} has labels {labels}")
        if sorted(self.boundary) != sorted(n for n, k in enumerate(self.kinds) if k == BOUNDARY):
            raise WebError("boundary list does not match boundary nodes")
        pos = {b: i for i, b in enumerate(self.boundary)}
        comp = _components(self)
        spans = []
        for nodes in comp:
            darts = [d for n in nodes for d in self.rot[n]]
            fs = _face_orbits(self, darts)
            edges = len(darts) // 2
            if len(nodes) - edges + len(fs) != 2:
                raise WebError("component is not planar (Euler characteristic != 2)")
            bnodes = [n for n in nodes if self.kinds[n] == BOUNDARY]
            if bnodes:
                outer = [f for f in fs if any(self.node[d] in bnodes for d in f)]
                if len(outer) != 1:
                    raise WebError("boundary points of a component lie on different faces")
                walk = [pos[self.node[d]] for d in outer[0] if self.kinds[self.node[d]] == BOUNDARY]
                walk.reverse()
                i = walk.index(min(walk))
                walk = walk[i:] + walk[:i]
                if walk != sorted(walk):
                    raise WebError("boundary order disagrees with the planar embedding")
                spans.append(walk)
        for a in spans:
            for b in spans:
                if a is b:
                    continue
                inside = [x for x in b if a[0] < x < a[-1]]
                between = [
                    x for x in b
                    if any(a[i] < x < a[i + 1] for i in range(len(a) - 1))
                ]
                if inside and len({_gap(a, x) for x in between}) > 1:
                    raise WebError("boundary components interleave")

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        internal = [n for n, k in enumerate(self.kinds) if k != BOUNDARY]
        vidx = {n: i for i, n in enumerate(internal)}
        darts = [d for n in internal for d in self.rot[n]]
        hidx = {d: i for i, d in enumerate(darts)}
        bpos = {b: i for i, b in enumerate(self.boundary)}
        half_edges = []
        for d in darts:
            t = self.twin[d]
            tn = self.node[t]
            twin = {"boundary": bpos[tn]} if self.kinds[tn] == BOUNDARY else hidx[t]
            half_edges.append({"twin": twin, "next": hidx[self.next_ccw(d)], "vertex": vidx[self.node[d]]})
        arcs = []
        for b in self.boundary:
            (d,) = self.rot[b]
            t = self.twin[d]
            if self.kinds[self.node[t]] == BOUNDARY and bpos[b] < bpos[self.node[t]]:
                arcs.append([bpos[b], bpos[self.node[t]], self.label[d]])
        return {
            "vertices": [{"kind": self.kinds[n]} for n in internal],
            "half_edges": half_edges,
            "edge_labels": [self.label[d] for d in darts],
            "arcs": arcs,
            "loops": {"1": self.loops[0], "2": self.loops[1]},
            "base_point": 0,
            "n_boundary": len(self.boundary),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping | str) -> Web:
        if isinstance(data, str):
            data = json.loads(data)
        verts = data.get("vertices", [])
        hes = data.get("half_edges", [])
        labels = data.get("edge_labels", [])
        if len(labels) != len(hes):
            raise WebError("edge_labels must give one label per half-edge")
        arcs = data.get("arcs", [])
        bp = int(data.get("base_point", 0))
        used = [h["twin"]["boundary"] for h in hes if isinstance(h["twin"], dict)]
        used += [a[0] for a in arcs] + [a[1] for a in arcs]
        nb = int(data.get("n_boundary", len(used)))
        if sorted(used) != list(range(nb)):
            raise WebError("boundary positions must each be used exactly once")
        bld = _Builder()
        vnodes = [bld.add_node(v["kind"]) for v in verts]
        bnodes = [bld.add_node(BOUNDARY) for _ in range(nb)]
        # recover ccw order around each vertex from the "next" permutation
        dmap: dict[int, int] = {}
        for v, n in enumerate(vnodes):
            mine = [i for i, h in enumerate(hes) if h["vertex"] == v]
            if not mine:
                raise WebError(f"vertex {v} has no half-edges")
            order = [mine[0]]
            while True:
                nxt = hes[order[-1]]["next"]
                if nxt == order[0]:
                    break
                if nxt in order or hes[nxt]["vertex"] != v:
                    raise WebError("'next' is not a cyclic order around a vertex")
                order.append(nxt)
            if sorted(order) != sorted(mine):
                raise WebError("'next' does not cover every half-edge of the vertex")
            for i in order:
                dmap[i] = bld.add_dart(n, int(labels[i]))
        for i, h in enumerate(hes):
            t = h["twin"]
            if isinstance(t, dict):
                b = bnodes[t["boundary"]]
                bd = bld.add_dart(b, int(labels[i]))
                bld.connect(dmap[i], bd)
            else:
                if hes[t]["twin"] != i:
                    raise WebError("twin is not an involution")
                bld.connect(dmap[i], dmap[t])
        for a, b, lab in arcs:
            da = bld.add_dart(bnodes[a], int(lab))
            db = bld.add_dart(bnodes[b], int(lab))
            bld.connect(da, db)
        loops = data.get("loops", {})
        bld.loops = [int(loops.get("1", 0)), int(loops.get("2", 0))]
        order = [bnodes[(bp + i) % nb] for i in range(nb)] if nb else []
        w = bld.freeze(order)
        w.validate()
        return w


def _gap(a: list[int], x: int) -> int:
    for i in range(len(a) - 1):
        if a[i] < x < a[i + 1]:
            return i
    return -1


def _components(w: Web) -> list[list[int]]:
    seen = [False] * len(w.kinds)
    out = []
    for s in range(len(w.kinds)):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            n = stack.pop()
            comp.append(n)
            for d in w.rot[n]:
                m = w.node[w.twin[d]]
                if not seen[m]:
                    seen[m] = True
                    stack.append(m)
        out.append(sorted(comp))
    return out


def _face_orbits(w: Web, darts: Iterable[int]) -> list[list[int]]:
    seen = set()
    out = []
    for d in darts:
        if d in seen:
            continue
        orbit = []
        e = d
        while e not in seen:
            seen.add(e)
            orbit.append(e)
            e = w.face_step(e)
        out.append(orbit)
    return out


# -- canonical keys -----------------------------------------------------------

def _encode(w: Web, root: int, bpos: Mapping[int, int]) -> tuple:
    """Breadth-first encoding of the component containing dart ``root``."""
    order = {w.node[root]: 0}
    entry = {w.node[root]: root}
    queue = [w.node[root]]
    i = 0
    while i < len(queue):
        n = queue[i]
        i += 1
        darts = w.rot[n]
        s = darts.index(entry[n])
        for d in darts[s:] + darts[:s]:
            m = w.node[w.twin[d]]
            if m not in order:
                order[m] = len(order)
                entry[m] = w.twin[d]
                queue.append(m)
    out = []
    for n in queue:
        darts = w.rot[n]
        s = darts.index(entry[n])
        kind = w.kinds[n]
        rec = [kind if kind != BOUNDARY else f"B{bpos[n]}"]
        for d in darts[s:] + darts[:s]:
            t = w.twin[d]
            m = w.node[t]
            mr = w.rot[m]
            off = (mr.index(t) - mr.index(entry[m])) % len(mr)
            rec.append((w.label[d], order[m], off))
        out.append(tuple(rec))
    return tuple(out)


def _canonical(w: Web) -> tuple:
    bpos = {b: i for i, b in enumerate(w.boundary)}
    open_codes = []
    closed_codes = []
    for comp in _components(w):
        bn = [n for n in comp if w.kinds[n] == BOUNDARY]
        if bn:
            first = min(bn, key=bpos.__getitem__)
            open_codes.append(_encode(w, w.rot[first][0], bpos))
        else:
            closed_codes.append(min(_encode(w, d, bpos) for n in comp for d in w.rot[n]))
    open_codes.sort(key=lambda c: c[0][0])
    closed_codes.sort()
    return (w.coloring, tuple(open_codes), tuple(closed_codes), w.loops)


def canonical_key(w: Web) -> bytes:
    """Encoding constant exactly on base-point-preserving isotopy classes."""
    k = w._cache.get("bytes")
    if k is None:
        k = repr(w.key()).encode()
        w._cache["bytes"] = k
    return k


# -- faces --------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """One face of the rotation system.

    ``darts`` walk the face clockwise; ``sides`` and ``corners`` list the edge
    label and vertex kind along that walk. ``outer`` is set when the walk meets
    a boundary node. Free loops are reported as one-sided faces with no darts.
    """

    darts: tuple[int, ...]
    sides: tuple[int, ...]
    corners: tuple[str, ...]
    outer: bool

    @property
    def n_sides(self) -> int:
        return len(self.sides)


def faces(w: Web) -> list[Face]:
    out = []
    for orbit in _face_orbits(w, range(len(w.twin))):
        out.append(
            Face(
                darts=tuple(orbit),
                sides=tuple(w.label[d] for d in orbit),
                corners=tuple(w.kinds[w.node[d]] for d in orbit),
                outer=any(w.kinds[w.node[d]] == BOUNDARY for d in orbit),
            )
        )
    for lab in (SINGLE, DOUBLE):
        for _ in range(w.loops[lab - 1]):
            out.append(Face(darts=(), sides=(lab,), corners=(), outer=False))
    return out


# -- constructors and spider operations ----------------------------------------

def web_from_drawing(
    vertices: Mapping[str, tuple[float, float]],
    boundary: Sequence[tuple[float, float]],
    edges: Sequence[tuple],
) -> Web:
    """Build a web from a straight-line drawing (y axis pointing up).

    ``vertices`` maps names to positions; boundary points are named ``0..n-1``
    in clockwise order. Each edge is ``(a, b, label)`` or
    ``(a, b, label, (x, y))``; the optional point is a bend used to separate
    parallel edges. Vertex kinds follow from the incident labels.
    """
    pos = dict(vertices)
    for i, p in enumerate(boundary):
        pos[str(i)] = p
    incident: dict[str, list] = {name: [] for name in pos}
    for e in edges:
        a, b, lab = str(e[0]), str(e[1]), e[2]
        bend = e[3] if len(e) > 3 else None
        ta = bend or pos[b]
        tb = bend or pos[a]
        incident[a].append((math.atan2(ta[1] - pos[a][1], ta[0] - pos[a][0]), lab, e, 0))
        incident[b].append((math.atan2(tb[1] - pos[b][1], tb[0] - pos[b][0]), lab, e, 1))
    bld = _Builder()
    nodes = {}
    for name in pos:
        if name in vertices:
            nodes[name] = bld.add_node(vertex_kind(x[1] for x in incident[name]))
        else:
            nodes[name] = bld.add_node(BOUNDARY)
    ends: dict[tuple[int, int], int] = {}
    for name, inc in incident.items():
        for ang, lab, e, side in sorted(inc, key=lambda x: x[0]):
            ends[(id(e), side)] = bld.add_dart(nodes[name], lab)
    for e in edges:
        bld.connect(ends[(id(e), 0)], ends[(id(e), 1)])
    w = bld.freeze([nodes[str(i)] for i in range(len(boundary))])
    w.validate()
    return w


def _ngon(n: int, r: float = 1.0, phase: float = math.pi / 2) -> list[tuple[float, float]]:
    # points listed clockwise
    return [(r * math.cos(phase - 2 * math.pi * i / n), r * math.sin(phase - 2 * math.pi * i / n)) for i in range(n)]


def _star(labels: Sequence[int]) -> Web:
    pts = _ngon(len(labels))
    return web_from_drawing({"v": (0.0, 0.0)}, pts, [("v", i, lab) for i, lab in enumerate(labels)])


def _strand(label: int) -> Web:
    return web_from_drawing({}, [(-1.0, 0.0), (1.0, 0.0)], [(0, 1, label)])


def elementary(kind: str) -> Web:
    """Named elementary webs.

    Kinds: ``empty``, ``single``/``double`` strands (also ``cup1``, ``cap1``,
    ``cup2``, ``cap2``: in a disk a cup, a cap and a strand coincide),
    ``vertex111``, ``vertex211`` (coloring (2,1,1)), ``vertex222``,
    ``loop1`` and ``loop2``.
    """
    if kind == "empty":
        return Web()
    if kind in ("single", "cup1", "cap1", "single-strand"):
        return _strand(SINGLE)
    if kind in ("double", "cup2", "cap2", "double-strand"):
        return _strand(DOUBLE)
    if kind == "vertex111":
        return _star((1, 1, 1))
    if kind == "vertex211":
        return _star((2, 1, 1))
    if kind == "vertex222":
        return _star((2, 2, 2))
    if kind == "loop1":
        return Web(loops=(1, 0))
    if kind == "loop2":
        return Web(loops=(0, 1))
    raise WebError(f"unknown elementary web {kind!r}")


def _tensor_webs(a: Web, b: Web) -> Web:
    bld = _Builder()
    na, _ = bld.absorb(a)
    nb, _ = bld.absorb(b)
    return bld.freeze([na[x] for x in a.boundary] + [nb[x] for x in b.boundary])


def _glue_webs(a: Web, b: Web, k: int) -> Web:
    m = len(a.boundary)
    if not 0 <= k <= min(m, len(b.boundary)):
        raise WebError("glue count out of range")
    ca, cb = a.coloring, b.coloring
    if tuple(ca[m - k:]) != tuple(reversed(cb[:k])):
        raise WebError(f"cannot glue colorings {ca} and {cb} along {k} points")
    bld = _Builder()
    na, _ = bld.absorb(a)
    nb, _ = bld.absorb(b)
    for j in range(k):
        bld.splice(na[a.boundary[m - 1 - j]], nb[b.boundary[j]])
    return bld.freeze([na[x] for x in a.boundary[: m - k]] + [nb[x] for x in b.boundary[k:]])


def _rotate_web(a: Web, k: int) -> Web:
    n = len(a.boundary)
    if n == 0:
        return a
    k %= n
    return Web(a.kinds, a.rot, a.twin, a.label, a.boundary[k:] + a.boundary[:k], a.loops)


def _mirror_web(a: Web) -> Web:
    rot = tuple(tuple(reversed(r)) for r in a.rot)
    return Web(a.kinds, rot, a.twin, a.label, tuple(reversed(a.boundary)), a.loops)


# -- linear combinations --------------------------------------------------------

class WebSum:
    """Formal Q(q)-linear combination of webs sharing one coloring."""

    __slots__ = ("coloring", "_terms")

    def __init__(self, terms: Iterable[tuple[Web, object]] = (), coloring: Sequence[int] | None = None):
        self._terms: dict[tuple, tuple[Web, RatFunc]] = {}
        self.coloring = tuple(coloring) if coloring is not None else None
        for w, c in terms:
            self.add_term(w, c)
        if self.coloring is None:
            self.coloring = ()

    @classmethod
    def of(cls, w: Web, c=1) -> WebSum:
        return cls([(w, c)], w.coloring)

    @classmethod
    def zero(cls, coloring: Sequence[int]) -> WebSum:
        return cls((), coloring)

    def add_term(self, w: Web, c) -> None:
        """In-place accumulation; only used while a sum is being built."""
        c = RatFunc.coerce(c)
        if self.coloring is None:
            self.coloring = w.coloring
        elif w.coloring != self.coloring:
            raise WebError(f"coloring {w.coloring} does not match {self.coloring}")
        if c.is_zero():
            return
        k = w.key()
        if k in self._terms:
            c = self._terms[k][1] + c
            if c.is_zero():
                del self._terms[k]
                return
        self._terms[k] = (w, c)

    def __iter__(self) -> Iterator[tuple[Web, RatFunc]]:
        for w, c in sorted(self._terms.values(), key=lambda t: canonical_key(t[0])):
            yield w, c

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, w: Web) -> RatFunc:
        t = self._terms.get(w.key())
        return t[1] if t else RatFunc(0)

    def webs(self) -> list[Web]:
        return [w for w, _ in self]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WebSum):
            return NotImplemented
        if self.coloring != other.coloring or self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[k][1] == other._terms[k][1] for k in self._terms)

    def __add__(self, other: WebSum) -> WebSum:
        if self.coloring != other.coloring:
            raise WebError("cannot add web sums with different colorings")
        out = WebSum(self, self.coloring)
        for w, c in other:
            out.add_term(w, c)
        return out

    def __neg__(self) -> WebSum:
        return WebSum(((w, -c) for w, c in self), self.coloring)

    def __sub__(self, other: WebSum) -> WebSum:
        return self + (-other)

    def scale(self, s) -> WebSum:
        s = RatFunc.coerce(s)
        return WebSum(((w, c * s) for w, c in self), self.coloring)

    def __rmul__(self, s) -> WebSum:
        return self.scale(s)

    def map(self, f, coloring: Sequence[int]) -> WebSum:
        return WebSum(((f(w), c) for w, c in self), coloring)

    def __repr__(self) -> str:
        inner = ", ".join(f"{c} * {w!r}" for w, c in self)
        return f"WebSum({self.coloring}, [{inner}])"


def _as_sum(x) -> WebSum:
    return x if isinstance(x, WebSum) else WebSum.of(x)


def tensor(a, b):
    """Side-by-side juxtaposition; bilinear on web sums."""
    if isinstance(a, Web) and isinstance(b, Web):
        return _tensor_webs(a, b)
    a, b = _as_sum(a), _as_sum(b)
    out = WebSum.zero(a.coloring + b.coloring)
    for wa, ca in a:
        for wb, cb in b:
            out.add_term(_tensor_webs(wa, wb), ca * cb)
    return out


def glue(a, b, k: int):
    """Stitch the last ``k`` boundary points of ``a`` to the first ``k`` of ``b``."""
    if isinstance(a, Web) and isinstance(b, Web):
        return _glue_webs(a, b, k)
    a, b = _as_sum(a), _as_sum(b)
    m = len(a.coloring)
    if tuple(a.coloring[m - k:]) != tuple(reversed(b.coloring[:k])):
        raise WebError(f"cannot glue colorings {a.coloring} and {b.coloring} along {k} points")
    out = WebSum.zero(a.coloring[: m - k] + b.coloring[k:])
    for wa, ca in a:
        for wb, cb in b:
            out.add_term(_glue_webs(wa, wb, k), ca * cb)
    return out


def rotate(a, k: int):
    """Move the base point ``k`` positions clockwise."""
    if isinstance(a, Web):
        return _rotate_web(a, k)
    n = len(a.coloring)
    k = k % n if n else 0
    return a.map(lambda w: _rotate_web(w, k), a.coloring[k:] + a.coloring[:k])


def mirror(a):
    """Reflect the diagram; the boundary order reverses."""
    if isinstance(a, Web):
        return _mirror_web(a)
    return a.map(_mirror_web, tuple(reversed(a.coloring)))


def _insert_web(w: Web, t: Web, i: int) -> Web:
    """Put the box ``t`` on top of positions ``i, i+1`` of ``w``."""
    bld = _Builder()
    nw, _ = bld.absorb(w)
    nt, _ = bld.absorb(t)
    bl, tl, tr, br = (nt[x] for x in t.boundary)
    bld.splice(nw[w.boundary[i]], bl)
    bld.splice(nw[w.boundary[i + 1]], br)
    b = [nw[x] for x in w.boundary]
    return bld.freeze(b[:i] + [tl, tr] + b[i + 2:])


def insert(x, t, i: int) -> WebSum:
    """Stack the 4-point web ``t`` on positions ``i, i+1`` of ``x``.

    ``t`` is read in box layout (BL, TL, TR, BR): its bottom pair is glued to
    ``x`` and its top pair takes their place. Bilinear on web sums.
    """
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    t = t if isinstance(t, WebSum) else WebSum.of(t)
    s = x.coloring
    if (s[i], s[i + 1]) != (t.coloring[0], t.coloring[3]):
        raise WebError(f"box with bottom {t.coloring[0], t.coloring[3]} does not fit {s[i], s[i + 1]}")
    out = WebSum.zero(s[:i] + (t.coloring[1], t.coloring[2]) + s[i + 2:])
    for wx, cx in x:
        for wt, ct in t:
            out.add_term(_insert_web(wx, wt, i), cx * ct)
    return out


# -- basis registry ---------------------------------------------------------------

class BasisRegistry:
    """Coloring -> ordered list of webs (a basis, or a spanning set)."""

    def __init__(self, entries: Mapping[Sequence[int], Sequence[Web]] | None = None):
        self._bases: dict[tuple[int, ...], tuple[Web, ...]] = {}
        for s, webs in (entries or {}).items():
            self.register(s, webs)

    def register(self, coloring: Sequence[int], webs: Sequence[Web]) -> None:
        coloring = tuple(coloring)
        for w in webs:
            if w.coloring != coloring:
                raise WebError(f"web with coloring {w.coloring} registered under {coloring}")
        keys = {w.key() for w in webs}
        if len(keys) != len(webs):
            raise WebError("registered webs must be pairwise non-isotopic")
        self._bases[coloring] = tuple(webs)

    def __contains__(self, coloring) -> bool:
        return tuple(coloring) in self._bases

    def __getitem__(self, coloring) -> tuple[Web, ...]:
        try:
            return self._bases[tuple(coloring)]
        except KeyError:
            raise WebError(f"no basis registered for coloring {tuple(coloring)}") from None

    def colorings(self) -> list[tuple[int, ...]]:
        return list(self._bases)

    def sizes(self) -> dict[tuple[int, ...], int]:
        return {s: len(b) for s, b in self._bases.items()}
