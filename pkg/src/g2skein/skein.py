"""Relation engine: rewrite rules, closed evaluation, basis reduction, pairing.

Rules come from :mod:`g2skein.tables`. A face rule matches an interior face
whose clockwise ``(leg, side)`` cycle equals the rule pattern up to rotation;
mirror images of chiral rules are generated mechanically. The elimination
rule matches any double edge joining two mixed vertices, in either
orientation, since the rung itself fixes the frame.

Two evaluators are provided:

* ``full`` uses every printed relation (the normal engine) and hands a web
  to the ``definition`` strategy only when no printed rule fits it;
* ``definition`` uses only the defining relations, the rearranged
  elimination and the two expanding moves. It is slower and serves as an
  independent oracle for the additional relations.

>>> str(evaluate_closed(Web(loops=(1, 0))).eval_at(1))
'7'
"""
from __future__ import annotations

import sys
import weakref
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import tables
from .dims import invariant_dimension
from .qalg import RatFunc
from .web import (
    BOUNDARY,
    BasisRegistry,
    Web,
    WebError,
    WebSum,
    _Builder,
    _components,
    _face_orbits,
    glue,
    insert,
    mirror,
    rotate,
)

__all__ = [
    "RewriteRule",
    "RuleTable",
    "Site",
    "Stalled",
    "Stuck",
    "Undecided",
    "Evaluator",
    "rule_table",
    "find_sites",
    "apply_rule",
    "evaluate_closed",
    "reduce_to_basis",
    "to_basis",
    "pair",
    "gram_matrix",
    "det",
    "solve",
    "equal",
    "Report",
    "run_case",
    "verify_relations",
    "default_registry",
    "extended_registry",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Stuck(RuntimeError):
    """No rule applies (or the search budget ran out); ``web`` is the culprit."""

    def __init__(self, msg: str, web: Web | None = None):
        super().__init__(msg)
        self.web = web


class Undecided(RuntimeError):
    """Equality could not be decided: no registered spanning set."""

    def __init__(self, msg: str, obj=None):
        super().__init__(msg)
        self.obj = obj


@dataclass(frozen=True)
class Stalled:
    """Partial basis reduction: ``done`` is in the basis, ``residue`` is not."""

    done: WebSum
    residue: WebSum


# -- rules ---------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    """A local rewrite ``lhs -> sum(coeff * rhs_web)``.

    ``shape`` is ``loop``, ``face``, ``edge`` (double edge between two mixed
    vertices), ``rung`` (a single edge between two single-only vertices, used
    by the rearranged elimination), ``strand`` or ``vertex``.
    """

    name: str
    group: str
    kind: str
    shape: str
    pattern: tuple
    rhs: tuple[tuple[Web, RatFunc], ...]
    coeff_strings: tuple[str, ...] = ()
    mirrored: bool = False

    @property
    def arity(self) -> int:
        if self.shape == "face":
            return len(self.pattern)
        return {"edge": 4, "rung": 4, "strand": 2, "vertex": 3}.get(self.shape, 0)

    def signature(self) -> str:
        if self.shape == "face":
            cyc = " ".join(f"{l}{'|' if s == 1 else '||'}" for l, s in self.pattern)
            return f"{len(self.pattern)}-gon [{cyc}]"
        if self.shape == "loop":
            return "loop " + ("single" if self.pattern[0] == 1 else "double")
        return {
            "edge": "double edge between mixed vertices",
            "rung": "single edge between single vertices",
            "strand": "double strand",
            "vertex": "V222 vertex",
        }[self.shape]

    def lhs(self) -> Web:
        if self.shape == "face":
            return tables.polygon_web(self.pattern)
        if self.shape == "loop":
            return Web(loops=(1, 0) if self.pattern[0] == 1 else (0, 1))
        if self.shape == "edge":
            return rotate(tables.box("T", (1, 1, 1, 1), 2), 1)
        if self.shape == "rung":
            return rotate(tables.box("Y", (1, 1, 1, 1), 1), 1)
        if self.shape == "strand":
            return Web(kinds=("B", "B"), rot=((0,), (1,)), twin=(1, 0), label=(2, 2), boundary=(0, 1))
        if self.shape == "vertex":
            return tables._vertex((2, 2, 2))
        raise ValueError(self.shape)


@dataclass(frozen=True)
class RuleTable:
    """Rules grouped by priority class; ``faces`` maps rotated patterns to rules."""

    rules: tuple[RewriteRule, ...]
    faces: dict = field(repr=False, compare=False, default_factory=dict)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, name: str) -> RewriteRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def printed(self) -> list[RewriteRule]:
        return [r for r in self.rules if not r.mirrored and r.shape != "rung"]

    def select(self, groups: Iterable[str]) -> RuleTable:
        g = set(groups)
        return _make_table(tuple(r for r in self.rules if r.group in g))

    def dump(self) -> str:
        lines = []
        for r in self.rules:
            co = ", ".join(r.coeff_strings) if r.coeff_strings else "0"
            lines.append(f"{r.name} | {r.signature()} | {co}")
        return "\n".join(lines)


def _rule(rel: tables.Relation, kind: str = "reducing", shape: str | None = None) -> RewriteRule:
    return RewriteRule(
        name=rel.name,
        group=rel.group,
        kind=kind,
        shape=shape or rel.shape,
        pattern=tuple(rel.pattern),
        rhs=tuple((t.web, t.value) for t in rel.terms),
        coeff_strings=tuple(t.coeff for t in rel.terms),
    )


def _rotations(p: Sequence) -> list[tuple]:
    return [tuple(p[r:]) + tuple(p[:r]) for r in range(len(p))]


def _mirror_rule(r: RewriteRule) -> RewriteRule | None:
    mp = tables.mirror_pattern(r.pattern)
    if mp in _rotations(r.pattern):
        return None
    return RewriteRule(
        name=r.name + "~mirror",
        group=r.group,
        kind=r.kind,
        shape="face",
        pattern=mp,
        rhs=tuple((tables.mirror_local(w), c) for w, c in r.rhs),
        coeff_strings=r.coeff_strings,
        mirrored=True,
    )


def _make_table(rules: tuple[RewriteRule, ...]) -> RuleTable:
    faces: dict[tuple, tuple[RewriteRule, int]] = {}
    for r in rules:
        if r.shape != "face":
            continue
        for k, rp in enumerate(_rotations(r.pattern)):
            faces.setdefault(rp, (r, k))
    return RuleTable(rules, faces)


@lru_cache(maxsize=None)
def rule_table() -> RuleTable:
    """The full table: printed relations, generated mirrors, expanding moves."""
    rules: list[RewriteRule] = [_rule(r) for r in tables.loop_relations()]
    for rel in tables.face_relations():
        r = _rule(rel)
        rules.append(r)
        m = _mirror_rule(r)
        if m is not None:
            rules.append(m)
    rules.append(_rule(tables.edge_relation()))
    rea, _ = tables.rearranged_elimination()
    rules.append(_rule(rea, shape="rung"))
    for rel in tables.expanding_moves():
        rules.append(_rule(rel, kind="expanding"))
    return _make_table(tuple(rules))


# -- sites ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Site:
    """Where a rule applies: region vertices and the leg darts leaving it, clockwise."""

    shape: str
    nodes: tuple[int, ...]
    legs: tuple[int, ...]
    pattern: tuple = ()


def _face_sites(w: Web) -> list[Site]:
    out = []
    for orbit in _face_orbits(w, range(len(w.twin))):
        nodes = tuple(w.node[d] for d in orbit)
        if len(set(nodes)) != len(nodes) or any(w.kinds[n] == BOUNDARY for n in nodes):
            continue
        legs = tuple(w.next_ccw(d) for d in orbit)
        pat = tuple((w.label[l], w.label[d]) for l, d in zip(legs, orbit))
        out.append(Site("face", nodes, legs, pat))
    out.sort(key=lambda s: len(s.nodes))
    return out


def _edge_sites(w: Web) -> list[Site]:
    out = []
    for e, f in enumerate(w.twin):
        if e > f or w.label[e] != 2:
            continue
        u, v = w.node[e], w.node[f]
        if u == v or w.kinds[u] != "V211" or w.kinds[v] != "V211":
            continue
        s1e = w.next_ccw(e)
        s1f = w.next_ccw(f)
        out.append(Site("edge", (u, v), (w.next_ccw(s1e), s1e, w.next_ccw(s1f), s1f)))
    return out


def _rung_site(w: Web, d: int) -> Site:
    """The single edge ``d`` read as a horizontal rung with the face ``d`` walks below it."""
    t = w.twin[d]
    return Site("rung", (w.node[d], w.node[t]), (w.next_ccw(d), w.next_ccw(w.next_ccw(t)), w.next_ccw(t),
                                                  w.next_ccw(w.next_ccw(d))))


def _vertex_sites(w: Web) -> list[Site]:
    return [Site("vertex", (n,), tuple(reversed(w.rot[n]))) for n, k in enumerate(w.kinds) if k == "V222"]


def _strand_sites(w: Web) -> list[Site]:
    return [Site("strand", (), (e, f)) for e, f in enumerate(w.twin) if e < f and w.label[e] == 2]


def find_sites(w: Web, rule: RewriteRule) -> list[Site]:
    """Every place ``rule`` applies in ``w`` (interior sites only)."""
    if rule.shape == "face":
        k = len(rule.pattern)
        rots = _rotations(rule.pattern)
        return [s for s in _face_sites(w) if len(s.nodes) == k and s.pattern in rots]
    if rule.shape == "edge":
        return _edge_sites(w)
    if rule.shape == "vertex":
        return _vertex_sites(w)
    if rule.shape == "strand":
        return _strand_sites(w)
    if rule.shape == "rung":
        return [
            _rung_site(w, d) for d in range(len(w.twin))
            if w.kinds[w.node[d]] == "V111" and w.kinds[w.node[w.twin[d]]] == "V111"
        ]
    return []


# -- rewriting -------------------------------------------------------------------------


def _replace(w: Web, nodes: Sequence[int], legs: Sequence[int], rhs: Web) -> Web:
    """Cut out ``nodes`` and plug ``rhs`` in, rhs boundary i <-> ``legs[i]``."""
    b = _Builder()
    nmap, dmap = b.absorb(w)
    idx = {l: i for i, l in enumerate(legs)}
    ports, pdarts = [], []
    for l in legs:
        p = b.add_node(BOUNDARY)
        ports.append(p)
        pdarts.append(b.add_dart(p, w.label[l]))
    for i, l in enumerate(legs):
        o = w.twin[l]
        j = idx.get(o)
        if j is None:
            b.connect(pdarts[i], dmap[o])
        elif j > i:
            b.connect(pdarts[i], pdarts[j])
    for n in nodes:
        b.kill_node(nmap[n])
    rn, _ = b.absorb(rhs)
    for i, p in enumerate(ports):
        b.splice(p, rn[rhs.boundary[i]])
    return b.freeze([nmap[x] for x in w.boundary])


def _split_strand(w: Web, e: int, rhs: Web) -> Web:
    b = _Builder()
    _, dmap = b.absorb(w)
    f = w.twin[e]
    ports = []
    for d in (e, f):
        p = b.add_node(BOUNDARY)
        b.connect(b.add_dart(p, 2), dmap[d])
        ports.append(p)
    rn, _ = b.absorb(rhs)
    for i, p in enumerate(ports):
        b.splice(p, rn[rhs.boundary[i]])
    nmap = list(range(len(w.kinds)))
    return b.freeze([nmap[x] for x in w.boundary])


def _terms_at(w: Web, site: Site, rule: RewriteRule) -> list[tuple[RatFunc, Web]]:
    if rule.shape == "face":
        k = len(site.nodes)
        rot = _rotations(rule.pattern)
        try:
            r = rot.index(site.pattern)
        except ValueError:
            raise WebError(f"rule {rule.name} does not match this face") from None
        legs = [site.legs[(i - r) % k] for i in range(k)]
        return [(c, _replace(w, site.nodes, legs, rw)) for rw, c in rule.rhs]
    if rule.shape == "strand":
        return [(c, _split_strand(w, site.legs[0], rw)) for rw, c in rule.rhs]
    return [(c, _replace(w, site.nodes, site.legs, rw)) for rw, c in rule.rhs]


def apply_rule(w: Web, site: Site | None, rule: RewriteRule) -> WebSum:
    """Replace the matched region by the rule's right-hand side.

    Loop rules take ``site=None`` and remove one free loop.
    """
    if rule.shape == "loop":
        i = rule.pattern[0] - 1
        if w.loops[i] == 0:
            raise WebError(f"no free loop for {rule.name}")
        loops = list(w.loops)
        loops[i] -= 1
        out = Web(w.kinds, w.rot, w.twin, w.label, w.boundary, tuple(loops))
        return WebSum([(out, rule.rhs[0][1])], w.coloring)
    if site is None or site.shape != (rule.shape if rule.shape != "face" else "face"):
        raise WebError(f"site does not match rule {rule.name}")
    if rule.shape == "face" and site.pattern not in _rotations(rule.pattern):
        raise WebError(f"rule {rule.name} does not match this face")
    return WebSum(((t, c) for c, t in _terms_at(w, site, rule)), w.coloring)


# -- component helpers -------------------------------------------------------------------


def _subweb(w: Web, nodes: Sequence[int]) -> Web:
    keep = sorted(nodes)
    nidx = {n: i for i, n in enumerate(keep)}
    darts = [d for n in keep for d in w.rot[n]]
    didx = {d: i for i, d in enumerate(darts)}
    return Web(
        kinds=tuple(w.kinds[n] for n in keep),
        rot=tuple(tuple(didx[d] for d in w.rot[n]) for n in keep),
        twin=tuple(didx[w.twin[d]] for d in darts),
        label=tuple(w.label[d] for d in darts),
        boundary=tuple(nidx[n] for n in w.boundary if n in nidx),
    )


def split_closed(w: Web) -> tuple[Web, list[Web]]:
    """Separate closed components (loops excluded) from the part touching the boundary."""
    comps = _components(w)
    closed, rest = [], []
    for c in comps:
        if any(w.kinds[n] == BOUNDARY for n in c):
            rest.extend(c)
        else:
            closed.append(_subweb(w, c))
    if not closed:
        return w, []
    base = _subweb(w, rest)
    return Web(base.kinds, base.rot, base.twin, base.label, base.boundary, w.loops), closed


# -- evaluation --------------------------------------------------------------------------

_FULL_ORDER = ((1,), (2,), "edge", (3,), (4,), (5,))
_ALT_ORDER = ((1,), (2,), (3,), (4,), (5,), "edge")


class Evaluator:
    """Memoized closed-web evaluator.

    ``mode`` is ``full`` or ``definition``; ``order`` is ``default`` or
    ``alt`` (faces before eliminations, last site first), used to test
    confluence.
    """

    def __init__(self, mode: str = "full", order: str = "default", max_depth: int = 5000):
        if mode not in ("full", "definition"):
            raise ValueError(mode)
        self.mode = mode
        self.order = order
        self.max_depth = max_depth
        table = rule_table()
        if mode == "full":
            self.table = table.select(["base", "derived"])
        else:
            # the all-double-leg triangle rule is the inverse of the V222 split;
            # keeping both would let the two undo each other
            base = table.select(["base"])
            self.table = _make_table(tuple(r for r in base.rules if r.name != "triangle-222"))
        self.edge = table["double-edge-elimination"]
        self.rung = table["rearranged-elimination"]
        self.split_v = table["split-v222"]
        self.split_s = table["split-double-strand"]
        self.loop = {1: table["loop-1"], 2: table["loop-2"]}
        self.memo: dict = {}
        self._active: set = set()
        self._depth = 0
        self.steps = 0

    # public
    def evaluate(self, x) -> RatFunc:
        if isinstance(x, Web):
            if x.boundary:
                raise WebError("evaluate_closed needs a closed web")
            return self.scalar(x)
        if x.coloring:
            raise WebError("evaluate_closed needs a closed web sum")
        total = RatFunc(0)
        for w, c in x:
            total = total + c * self.scalar(w)
        return total

    def scalar(self, w: Web) -> RatFunc:
        n1, n2 = w.loops
        val = RatFunc(1)
        if n1:
            val = self.loop[1].rhs[0][1] ** n1
        if n2:
            if self.mode == "full":
                val = val * self.loop[2].rhs[0][1] ** n2
            else:
                val = val * self._double_loop() ** n2
        if val.is_zero():
            return val
        comps = _components(w)
        if not comps:
            return val
        if len(comps) == 1:
            bare = Web(w.kinds, w.rot, w.twin, w.label, (), (0, 0)) if (n1 or n2) else w
            return val * self._connected(bare)
        for c in comps:
            val = val * self._connected(_subweb(w, c))
            if val.is_zero():
                break
        return val

    @lru_cache(maxsize=None)
    def _double_loop(self) -> RatFunc:
        # a double loop split open: two mixed vertices joined by a double edge and two singles
        (rw, c), = self.split_s.rhs
        theta = glue(rw, Web(kinds=("B", "B"), rot=((0,), (1,)), twin=(1, 0), label=(2, 2), boundary=(0, 1)), 2)
        # eliminate the double edge at once; the digon rule would just undo the split
        (site,) = _edge_sites(theta)
        val = RatFunc(0)
        for k, t in _terms_at(theta, site, self.edge):
            val = val + k * self.scalar(t)
        return c * val

    def _connected(self, w: Web) -> RatFunc:
        key = w.key()
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise Stuck("rewriting cycled back to a web under evaluation", w)
        self._depth += 1
        if self._depth > self.max_depth:
            self._depth = 0
            self._active.clear()
            raise Stuck("recursion budget exhausted", w)
        self._active.add(key)
        try:
            terms = self._step(w)
            if terms is None and self.mode == "full":
                # no printed rule fits: expanding here can be undone by derived
                # rules, so hand over to the defining-relation strategy
                val = get_evaluator("definition", self.order).scalar(w)
            elif terms is None:
                raise Stuck("no rule applies", w)
            else:
                self.steps += 1
                val = RatFunc(0)
                for c, t in terms:
                    val = val + c * self.scalar(t)
        finally:
            self._active.discard(key)
            self._depth -= 1
        self.memo[key] = val
        return val

    # rule selection
    def _step(self, w: Web):
        if self.mode == "definition":
            return self._step_definition(w)
        return self._step_full(w)

    def _pick(self, seq):
        seq = list(seq)
        if not seq:
            return None
        return seq[-1] if self.order == "alt" else seq[0]

    def _face_step(self, w: Web, faces: list[Site], size: int):
        hits = [(s, self.table.faces[s.pattern][0]) for s in faces if len(s.nodes) == size and s.pattern in self.table.faces]
        hit = self._pick(hits)
        if hit is None:
            return None
        return _terms_at(w, hit[0], hit[1])

    def _step_full(self, w: Web):
        faces = _face_sites(w)
        order = _ALT_ORDER if self.order == "alt" else _FULL_ORDER
        for cls in order:
            if cls == "edge":
                s = self._pick(_edge_sites(w))
                if s is not None:
                    return _terms_at(w, s, self.edge)
            else:
                t = self._face_step(w, faces, cls[0])
                if t is not None:
                    return t
        return None

    def _step_definition(self, w: Web):
        s = self._pick(_vertex_sites(w))
        if s is not None:
            return _terms_at(w, s, self.split_v)
        faces = _face_sites(w)
        for size in (1, 2, 3):
            t = self._face_step(w, faces, size)
            if t is not None:
                return t
        s = self._pick(_edge_sites(w))
        if s is not None:
            return _terms_at(w, s, self.edge)
        for f in faces:
            k = len(f.nodes)
            if k in (4, 5) and f.pattern == ((1, 1),) * k:
                return _terms_at(w, f, self.derived_rule(k))
        return None

    @lru_cache(maxsize=None)
    def derived_rule(self, k: int) -> RewriteRule:
        """Expansion of the all-single k-gon (k = 4, 5) from the defining relations.

        The k-gon is opened up and rewritten with the rearranged elimination
        on a side between two single-only corners, chasing the face it leaves
        behind until no interior face or double edge is left.
        """
        pat = ((1, 1),) * k
        out = self._local(tables.polygon_web(pat), {})
        return RewriteRule(f"derived-{k}-gon", "derived", "reducing", "face", pat, tuple(out))

    def _local(self, w: Web, memo: dict) -> WebSum:
        key = w.key()
        if key in memo:
            if memo[key] is None:
                raise Stuck("local derivation cycled", w)
            return memo[key]
        memo[key] = None
        core, closed = split_closed(w)
        scale = self.scalar(Web(loops=core.loops))
        for c in closed:
            scale = scale * self.scalar(c)
        core = Web(core.kinds, core.rot, core.twin, core.label, core.boundary, (0, 0))
        out = WebSum.zero(w.coloring)
        if not scale.is_zero():
            terms = self._local_step(core)
            if terms is None:
                out.add_term(core, scale)
            else:
                for c, t in terms:
                    for bw, bc in self._local(t, memo):
                        out.add_term(bw, scale * c * bc)
        memo[key] = out
        return out

    def _local_step(self, w: Web):
        s = self._pick(_vertex_sites(w))
        if s is not None:
            return _terms_at(w, s, self.split_v)
        faces = _face_sites(w)
        for size in (1, 2, 3):
            t = self._face_step(w, faces, size)
            if t is not None:
                return t
        best = None
        for f in faces:
            k = len(f.nodes)
            if k > 5:
                continue
            kinds = [w.kinds[n] for n in f.nodes]
            for i in range(k):
                if kinds[i] == "V111" and kinds[(i + 1) % k] == "V111":
                    rank = (k, -kinds.count("V211"))
                    if best is None or rank < best[0]:
                        best = (rank, f, i)
                    break
        if best is not None:
            _, f, i = best
            return _terms_at(w, _rung_site(w, self._side_dart(w, f, i)), self.rung)
        s = self._pick(_edge_sites(w))
        if s is not None:
            return _terms_at(w, s, self.edge)
        return None

    @staticmethod
    def _side_dart(w: Web, s: Site, i: int) -> int:
        # the face dart leaving corner i sits just before the leg in ccw order
        leg = s.legs[i]
        darts = w.rot[s.nodes[i]]
        return darts[(darts.index(leg) - 1) % 3]


_EVALUATORS: dict[tuple[str, str], Evaluator] = {}


def get_evaluator(mode: str = "full", order: str = "default") -> Evaluator:
    ev = _EVALUATORS.get((mode, order))
    if ev is None:
        ev = _EVALUATORS[(mode, order)] = Evaluator(mode, order)
    return ev


def evaluate_closed(x, mode: str = "full", order: str = "default") -> RatFunc:
    """Scalar value of a closed web or closed web sum.

    >>> str(evaluate_closed(Web(loops=(0, 1))).eval_at(1))
    '14'
    """
    return get_evaluator(mode, order).evaluate(x)


# -- open webs -----------------------------------------------------------------------------


def _interior_step(w: Web, ev: Evaluator):
    """One reducing step on an open web, away from the boundary."""
    faces = _face_sites(w)
    for cls in _FULL_ORDER:
        if cls == "edge":
            s = ev._pick(_edge_sites(w))
            if s is not None:
                return _terms_at(w, s, ev.edge)
        else:
            t = ev._face_step(w, faces, cls[0])
            if t is not None:
                return t
    return None


_REDUCE_MEMO: "weakref.WeakKeyDictionary[BasisRegistry, dict]" = weakref.WeakKeyDictionary()


def _reduce_web(w: Web, reg: BasisRegistry, ev: Evaluator, memo: dict, basis: dict):
    """WebSum over basis webs, or None when some branch stalls."""
    key = w.key()
    if key in memo:
        return memo[key]
    scale = RatFunc(1)
    core, closed = split_closed(w)
    if core.loops != (0, 0) or closed:
        scale = ev.scalar(Web(loops=core.loops))
        for c in closed:
            scale = scale * ev.scalar(c)
        core = Web(core.kinds, core.rot, core.twin, core.label, core.boundary, (0, 0))
    coloring = w.coloring
    if scale.is_zero():
        out = WebSum.zero(coloring)
    elif core.key() in basis:
        out = WebSum([(core, scale)], coloring)
    else:
        terms = _interior_step(core, ev)
        if terms is None:
            memo[key] = None
            return None
        out = WebSum.zero(coloring)
        for c, t in terms:
            sub = _reduce_web(t, reg, ev, memo, basis)
            if sub is None:
                memo[key] = None
                return None
            for bw, bc in sub:
                out.add_term(bw, scale * c * bc)
    memo[key] = out
    return out


def reduce_to_basis(x, reg: BasisRegistry) -> WebSum | Stalled:
    """Rewrite ``x`` inside the disk until only registered basis webs remain."""
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    if x.coloring not in reg:
        raise WebError(f"coloring {x.coloring} is not registered")
    ev = get_evaluator("full")
    memo = _REDUCE_MEMO.setdefault(reg, {})
    basis = {b.key(): b for b in reg[x.coloring]}
    done = WebSum.zero(x.coloring)
    residue = WebSum.zero(x.coloring)
    for w, c in x:
        sub = _reduce_web(w, reg, ev, memo, basis)
        if sub is None:
            residue.add_term(w, c)
        else:
            for bw, bc in sub:
                done.add_term(bw, c * bc)
    if residue.is_zero():
        return done
    return Stalled(done, residue)


def reduce_interior(x) -> WebSum:
    """Apply reducing rules away from the boundary until none applies.

    Closed components are evaluated to scalars. The result is a sum of webs
    with no reducible interior site; it is not a canonical form.
    """
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    ev = get_evaluator("full")
    out = WebSum.zero(x.coloring)
    for w, c in x:
        for bw, bc in _reduce_free(w, ev):
            out.add_term(bw, c * bc)
    return out


_FREE_MEMO: dict = {}


def _reduce_free(w: Web, ev: Evaluator) -> WebSum:
    key = w.key()
    hit = _FREE_MEMO.get(key)
    if hit is not None:
        return hit
    core, closed = split_closed(w)
    scale = ev.scalar(Web(loops=core.loops))
    for c in closed:
        scale = scale * ev.scalar(c)
    core = Web(core.kinds, core.rot, core.twin, core.label, core.boundary, (0, 0))
    out = WebSum.zero(w.coloring)
    if not scale.is_zero():
        terms = _interior_step(core, ev)
        if terms is None:
            out.add_term(core, scale)
        else:
            for c, t in terms:
                for bw, bc in _reduce_free(t, ev):
                    out.add_term(bw, scale * c * bc)
    _FREE_MEMO[key] = out
    return out


# -- pairing and linear algebra -------------------------------------------------------------


def pair(x, c, mode: str = "full") -> RatFunc:
    """Glue ``c`` onto ``x`` along the whole boundary and evaluate."""
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    m = len(x.coloring)
    cc = c.coloring
    if tuple(cc) != tuple(reversed(x.coloring)):
        raise WebError(f"cannot pair coloring {x.coloring} with {tuple(cc)}")
    return evaluate_closed(glue(x, c, m), mode)


def gram_matrix(webs: Sequence[Web], mode: str = "full") -> list[list[RatFunc]]:
    """``G[i][j] = pair(webs[i], mirror(webs[j]))``."""
    return [[pair(a, mirror(b), mode) for b in webs] for a in webs]


def det(m: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Determinant by Gaussian elimination over Q(q)."""
    a = [list(map(RatFunc.coerce, row)) for row in m]
    n = len(a)
    d = RatFunc(1)
    for i in range(n):
        p = next((r for r in range(i, n) if not a[r][i].is_zero()), None)
        if p is None:
            return RatFunc(0)
        if p != i:
            a[i], a[p] = a[p], a[i]
            d = -d
        d = d * a[i][i]
        inv = a[i][i].inv()
        for r in range(i + 1, n):
            if a[r][i].is_zero():
                continue
            f = a[r][i] * inv
            a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return d


def solve(m: Sequence[Sequence[RatFunc]], rhs: Sequence[RatFunc]) -> list[RatFunc]:
    """Solve ``m @ x = rhs`` over Q(q); raises ZeroDivisionError if singular."""
    n = len(m)
    a = [list(map(RatFunc.coerce, row)) + [RatFunc.coerce(b)] for row, b in zip(m, rhs)]
    for i in range(n):
        p = next((r for r in range(i, n) if not a[r][i].is_zero()), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        a[i], a[p] = a[p], a[i]
        inv = a[i][i].inv()
        a[i] = [x * inv for x in a[i]]
        for r in range(n):
            if r != i and not a[r][i].is_zero():
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [a[i][n] for i in range(n)]


_GRAM_OK: dict = {}


def _check_gram(webs: tuple[Web, ...], mode: str) -> list[list[RatFunc]]:
    key = (tuple(w.key() for w in webs), mode)
    g = _GRAM_OK.get(key)
    if g is None:
        g = gram_matrix(webs, mode)
        if webs and det(g).is_zero():
            raise Undecided("registered spanning set has a singular Gram matrix", webs)
        _GRAM_OK[key] = g
    return g


def to_basis(x, reg: BasisRegistry, mode: str = "full") -> WebSum:
    """Coordinates of ``x`` in the registered basis.

    Tries rewriting first; any stalled residue is projected with the Gram
    matrix of the closure pairing.
    """
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    if x.coloring not in reg:
        raise Undecided(f"no registered basis for coloring {x.coloring}", x)
    webs = reg[x.coloring]
    if mode == "full":
        r = reduce_to_basis(x, reg)
        if isinstance(r, WebSum):
            return r
        done, x = r.done, r.residue
    else:
        done = WebSum.zero(x.coloring)
    g = _check_gram(webs, mode)
    v = [pair(x, mirror(b), mode) for b in webs]
    gt = [[g[i][j] for i in range(len(webs))] for j in range(len(webs))]
    coeffs = solve(gt, v) if webs else []
    out = WebSum(done, x.coloring)
    for b, c in zip(webs, coeffs):
        out.add_term(b, c)
    return out


def independent_subset(
    webs: Sequence[Web], mode: str = "full", q0=Fraction(3, 2), limit: int | None = None
) -> list[Web]:
    """A subset with invertible Gram matrix, chosen greedily.

    Rank is tested after specializing at ``q0``; independence there implies
    independence over Q(q). A candidate is kept when its Schur complement
    against the current choice is nonzero. Stops once ``limit`` webs are chosen.
    """
    chosen: list[Web] = []
    inv: list[list[Fraction]] = []  # inverse Gram matrix of ``chosen`` at q0
    seen = set()
    for w in webs:
        if limit is not None and len(chosen) >= limit:
            break
        if w.key() in seen:
            continue
        seen.add(w.key())
        col = [pair(a, mirror(w), mode).eval_at(q0) for a in chosen]
        row = [pair(w, mirror(a), mode).eval_at(q0) for a in chosen]
        d = pair(w, mirror(w), mode).eval_at(q0)
        u = [sum(r[j] * col[j] for j in range(len(col))) for r in inv]  # inv @ col
        v = [sum(row[i] * inv[i][j] for i in range(len(row))) for j in range(len(row))]  # row @ inv
        schur = d - sum(row[i] * u[i] for i in range(len(row)))
        if schur == 0:
            continue
        n = len(chosen)
        new = [[inv[i][j] + u[i] * v[j] / schur for j in range(n)] + [-u[i] / schur] for i in range(n)]
        new.append([-v[j] / schur for j in range(n)] + [1 / schur])
        inv = new
        chosen.append(w)
    return chosen


def equal(
    x, y, reg: BasisRegistry | None = None, mode: str = "full", span_from_terms: bool = False
) -> bool:
    """Decide ``x == y`` in the web space.

    ``full`` mode rewrites ``x - y`` toward the registered basis and falls back
    to the closure pairing when stalled; ``definition`` mode goes straight to
    the pairing, evaluated with the defining relations only.
    """
    x = x if isinstance(x, WebSum) else WebSum.of(x)
    y = y if isinstance(y, WebSum) else WebSum.of(y)
    if x.coloring != y.coloring:
        raise WebError("colorings differ")
    d = x - y
    if d.is_zero():
        return True
    if not d.coloring:
        return evaluate_closed(d, mode).is_zero()
    reg = reg if reg is not None else extended_registry()
    if mode == "full" and d.coloring in reg:
        r = reduce_to_basis(d, reg)
        if isinstance(r, WebSum):
            return r.is_zero()
    if d.coloring in reg:
        webs = reg[d.coloring]
    elif span_from_terms:
        # the terms of x and y span the space once their Gram rank reaches its dimension
        cand = reduce_interior(x).webs() + reduce_interior(y).webs()
        cand += _symmetric_images(cand, d.coloring)
        dim = invariant_dimension(d.coloring)
        webs = independent_subset(cand, mode, limit=dim)
        if len(webs) < dim:
            more = _stacked_images(webs, d.coloring, reg)
            webs = independent_subset(webs + more, mode, limit=dim)
        if len(webs) < dim:
            raise Undecided(f"terms reach rank {len(webs)} of {dim} for {d.coloring}", d)
        return all(pair(d, mirror(b), mode).is_zero() for b in webs)
    else:
        raise Undecided(f"no registered spanning set for coloring {d.coloring}", d)
    _check_gram(webs, mode)
    return all(pair(d, mirror(b), mode).is_zero() for b in webs)


def _symmetric_images(webs: Sequence[Web], coloring: tuple[int, ...]) -> list[Web]:
    """Rotations and mirror images of ``webs`` that keep the boundary coloring."""
    n = len(coloring)
    out = []
    for w in webs:
        for v in (w, mirror(w)):
            for k in range(n):
                r = rotate(v, k)
                if r.coloring == coloring:
                    out.append(r)
    return out


def _stacked_images(webs: Sequence[Web], coloring: tuple[int, ...], reg: BasisRegistry) -> list[Web]:
    """Registered 4-point webs stacked on adjacent boundary pairs, keeping the coloring."""
    out = []
    for i in range(len(coloring) - 1):
        a, b = coloring[i], coloring[i + 1]
        if (a, a, b, b) not in reg:
            continue
        for t in reg[(a, a, b, b)]:
            for w in webs:
                out.extend(reduce_interior(insert(w, t, i)).webs())
    return out


# -- reports ---------------------------------------------------------------------------------


@dataclass
class CaseResult:
    name: str
    status: str  # pass | fail | undecided
    detail: str = ""


@dataclass
class Report:
    """Outcome of a verification suite; undecided cases never count as passing."""

    cases: list[CaseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    @property
    def undecided(self) -> list[CaseResult]:
        return [c for c in self.cases if c.status == "undecided"]

    def add(self, name: str, status: str, detail: str = "") -> None:
        self.cases.append(CaseResult(name, status, detail))

    def extend(self, other: Report) -> Report:
        self.cases.extend(other.cases)
        return self

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "cases": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.cases],
        }

    def text(self) -> str:
        return "\n".join(f"{c.status.upper():9} {c.name}" + (f"  ({c.detail})" if c.detail else "") for c in self.cases)


def run_case(rep: Report, name: str, fn) -> None:
    """Record ``fn()`` as pass/fail; engine give-ups are recorded as undecided."""
    try:
        rep.add(name, "pass" if fn() else "fail")
    except (Undecided, Stuck) as e:
        rep.add(name, "undecided", str(e))


def verify_relations(mode: str = "definition") -> Report:
    """Check every derived relation (and generated mirror) against the defining ones."""
    rep = Report()
    reg = extended_registry()
    for r in rule_table():
        if r.group != "derived":
            continue
        lhs = r.lhs()
        rhs = WebSum(((w, c) for w, c in r.rhs), lhs.coloring)
        run_case(rep, r.name, lambda: equal(WebSum.of(lhs), rhs, reg, mode=mode))
    return rep


# -- registries ---------------------------------------------------------------------------------


def _listed_bases() -> dict[tuple[int, ...], list[Web]]:
    box = tables.box
    a, m, e = (1, 1, 1, 1), (1, 2, 1, 2), (2, 2, 2, 2)
    return {
        a: [box("P", a), box("C", a), box("T", a, 1), box("Y", a, 1)],
        m: [box("Y", m, 1), box("T", m, 1), box("Sq", m, 1)],
        e: [box("P", e), box("C", e), box("T", e, 2), box("Y", e, 2), box("Sq", e, 1)],
    }


@lru_cache(maxsize=None)
def default_registry() -> BasisRegistry:
    """The three four-point bases: sizes 4, 3 and 5."""
    return BasisRegistry(_listed_bases())


@lru_cache(maxsize=None)
def extended_registry() -> BasisRegistry:
    """Spanning sets for every coloring with at most five points used by the tests.

    Four-point sets are closed under rotation and mirror images; each coloring
    keeps the first set registered for it.
    """
    box = tables.box
    strand = lambda l: Web(kinds=("B", "B"), rot=((0,), (1,)), twin=(1, 0), label=(l, l), boundary=(0, 1))
    star = lambda *ls: tables._vertex(ls)
    seeds: list[list[Web]] = [
        [Web()],
        [], [],
        [strand(1)], [strand(2)], [],
        [star(1, 1, 1)], [star(2, 1, 1)], [star(2, 2, 2)], [],
    ]
    seeds += list(_listed_bases().values())
    b, c = (1, 1, 2, 1), (1, 2, 2, 1)
    seeds.append([box("T", b, 1), box("Y", b, 1)])
    seeds.append([box("C", c, 1), box("T", c, 2), box("Y", c, 1)])
    seeds.append([t.web for t in tables.face_relations()[-1].terms])
    # every coloring of length <= 3 that is not listed has a zero space
    zero = [(1,), (2,), (1, 2), (2, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)]
    reg = BasisRegistry()
    for s in zero:
        reg.register(s, [])
    for webs in seeds:
        if not webs:
            continue
        n = len(webs[0].coloring)
        variants = []
        for k in range(max(n, 1)):
            variants.append([rotate(x, k) for x in webs])
            variants.append([rotate(mirror(x), k) for x in webs])
        for v in variants:
            s = v[0].coloring
            if s not in reg:
                reg.register(s, v)
    return reg
