"""Relation sets, the invariant set they cut out, and a sound vanishing test.

A relation ``f`` kills every point ``xi`` for which ``f(t^-1 xi) != 0`` for some
``t`` in ``xi``; the surviving points form ``Omega_R``. Deciding whether a
function vanishes on ``Omega_R`` is semi-decided here: the translates
``alpha(t, f)`` for ``|t| <= L`` are instantiated as constraints over a finite
coordinate universe ``U`` and we search for a consistent 0/1 assignment of
``U`` that zeroes every constraint but not the target. No such assignment means
the target vanishes on ``Omega_R`` (every point of ``Omega_R`` restricts to a
feasible assignment). A found assignment is returned as a witness; it need not
extend to a genuine point of ``Omega_R``.
"""
from __future__ import annotations

import math
import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernel
from .coordinate_algebra import DEFAULT_CAP, BoolFn, Context, Coordinate, FinitePoint, char, point_coord_text
from .crossed_product import CPElement
from .errors import EnumerationCapError, GroupError
from .partial_action import alpha, translate_point
from .scalars import GaussQ

# constraints whose free part has more consistent completions than this are
# only checked once their variables are assigned
GAC_LIMIT = 1 << 12


@dataclass(frozen=True)
class RelationSet:
    """Explicit relations plus optional generated families."""

    ctx: Context
    explicit: Tuple[BoolFn, ...] = ()
    length_additivity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "explicit", tuple(self.explicit))
        for f in self.explicit:
            if f.ctx != self.ctx:
                raise GroupError("relation built over a different context")
        if self.length_additivity and self.ctx.group.kind != "free":
            raise GroupError("the length-additivity family needs a free group")

    def max_word_length(self) -> int:
        if self.ctx.group.kind != "free":
            return 0
        return max((f.max_word_length() for f in self.explicit), default=0)

    def format(self) -> list:
        lines = [f.format() for f in self.explicit]
        if self.length_additivity:
            lines.append("family: 1[rs]1[r] - 1[rs] for |rs| = |r| + |s|")
        return lines


def length_additivity_instance(ctx: Context, r, s) -> BoolFn:
    rs = ctx.group.multiply(r, s)
    return char(ctx, rs) * char(ctx, r) - char(ctx, rs)


def instantiate(R: RelationSet, L: int, cap: int = DEFAULT_CAP) -> List[BoolFn]:
    """Explicit relations, then every nonzero family instance with ``|rs| <= L``."""
    if L < 0:
        raise ValueError("bound must be >= 0")
    out = list(R.explicit)
    if R.length_additivity:
        grp = R.ctx.group
        for w in grp.ball(L, cap):
            for k in range(1, len(w)):
                out.append(length_additivity_instance(R.ctx, w[:k], w[k:]))
        if len(out) > cap:
            raise EnumerationCapError(len(out), cap, "relation instances")
    return [f for f in out if f]


# ---------------------------------------------------------------------------
# membership of finite points


@dataclass(frozen=True)
class OmegaCheck:
    ok: bool
    t: object = None
    relation: Optional[BoolFn] = None
    value: Optional[GaussQ] = None

    def __bool__(self):
        return self.ok


def omega_violations(xi: FinitePoint, R: RelationSet, first_only: bool = False) -> List[OmegaCheck]:
    """Every ``(t, f)`` with ``t`` in ``xi`` and ``f(t^-1 xi) != 0``.

    The length-additivity family is checked through prefix closure of each
    translate, which covers all of its infinitely many instances.
    """
    if xi.ctx != R.ctx:
        raise GroupError("point and relations live over different contexts")
    grp = R.ctx.group
    out = []
    for t in xi.group_part():
        eta = translate_point(grp.inverse(t), xi)
        for f in R.explicit:
            v = f.evaluate(eta)
            if v:
                out.append(OmegaCheck(False, t, f, v))
                if first_only:
                    return out
        if R.length_additivity:
            for w in eta.group_part():
                for k in range(1, len(w)):
                    if (w[:k], 0) not in eta.coords:
                        f = length_additivity_instance(R.ctx, w[:k], w[k:])
                        out.append(OmegaCheck(False, t, f, f.evaluate(eta)))
                        if first_only:
                            return out
    return out


def omega_contains(xi: FinitePoint, R: RelationSet) -> OmegaCheck:
    bad = omega_violations(xi, R, first_only=True)
    return bad[0] if bad else OmegaCheck(True)


# ---------------------------------------------------------------------------
# constraint systems


@dataclass
class _Constraint:
    vars: Tuple[int, ...]
    parent: List[int]
    masks: List[int]
    re: List[int]
    im: List[int]
    want_zero: bool = True
    source: str = ""
    mvars: Optional[list] = None

    def monomial_vars(self) -> list:
        if self.mvars is None:
            self.mvars = [tuple(v for b, v in enumerate(self.vars) if m >> b & 1) for m in self.masks]
        return self.mvars


def _support(f: BoolFn, e) -> set:
    out = set()
    for m in f.terms:
        for g, i in m:
            out.add((g, i))
            if i:
                out.add((g, 0))
    out.discard((e, 0))
    return out


def _encode(f: BoolFn, index: Dict[Coordinate, int], e, want_zero=True, source="") -> _Constraint:
    support = sorted(_support(f, e), key=index.__getitem__)
    local = {c: k for k, c in enumerate(support)}
    parent = [local.get((g, 0), -1) if i else -1 for g, i in support]
    den = 1
    for c in f.terms.values():
        den = math.lcm(den, c.denominator())
    masks, re, im = [], [], []
    for m, c in f.terms.items():
        mask = 0
        for x in m:
            mask |= 1 << local[x]
        masks.append(mask)
        re.append(int(c.re * den))
        im.append(int(c.im * den))
    return _Constraint(tuple(index[c] for c in support), parent, masks, re, im, want_zero, source)


@dataclass
class ConstraintSystem:
    """Translated relation instances over a closed coordinate universe."""

    relations: RelationSet
    bound: int
    constraints: List[BoolFn]
    universe: List[Coordinate]
    _index: Dict[Coordinate, int] = field(default_factory=dict, repr=False)
    _encoded: List[_Constraint] = field(default_factory=list, repr=False)
    _root: Optional[List[int]] = field(default=None, repr=False)
    _root_conflict: bool = field(default=False, repr=False)
    _root_done: bool = field(default=False, repr=False)
    _dense: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        e = self.relations.ctx.group.identity
        self._index = {c: k for k, c in enumerate(self.universe) if c != (e, 0)}
        self._encoded = [_encode(f, self._index, e, True, f"c{k}") for k, f in enumerate(self.constraints)]


def _closed_universe(fs, ctx: Context) -> List[Coordinate]:
    e = ctx.group.identity
    seen = {(e, 0)}
    for f in fs:
        seen |= _support(f, e)
    return sorted(seen, key=lambda c: (len(c[0]) if isinstance(c[0], tuple) else 0, c[0], c[1]))


@lru_cache(maxsize=64)
def constraint_system(R: RelationSet, L: int, cap: int = DEFAULT_CAP) -> ConstraintSystem:
    grp = R.ctx.group
    inst = instantiate(R, L, cap)
    ts = grp.ball(L, cap)
    if len(ts) * len(inst) > cap:
        raise EnumerationCapError(len(ts) * len(inst), cap, "constraints")
    seen = {}
    for t in ts:
        for r in inst:
            c = alpha(t, r)
            if c and c not in seen and -c not in seen:
                seen[c] = None
    cons = list(seen)
    return ConstraintSystem(R, L, cons, _closed_universe(cons, R.ctx))


class _Search:
    """Depth-first search with per-constraint generalized arc consistency."""

    def __init__(self, nvars: int, parent: List[int], cons: List[_Constraint], watch: List[List[int]], cap: int):
        self.n = nvars
        self.parent = parent
        self.cons = cons
        self.watch = watch
        self.val = [-1] * nvars
        self.trail: List[int] = []
        self.cap = cap
        self.nodes = 0

    def assign(self, v, b, queue):
        self.val[v] = b
        self.trail.append(v)
        queue.extend(self.watch[v])

    def undo(self, mark):
        val, trail = self.val, self.trail
        while len(trail) > mark:
            val[trail.pop()] = -1

    def revise(self, k, queue) -> bool:
        """Propagate constraint ``k``; False on conflict."""
        c = self.cons[k]
        val = self.val
        fixed_one = free = zero = 0
        for bit, v in enumerate(c.vars):
            x = val[v]
            if x < 0:
                free |= 1 << bit
            elif x:
                fixed_one |= 1 << bit
            else:
                zero |= 1 << bit
        if not free:
            vr = vi = 0
            for m, a, b in zip(c.masks, c.re, c.im):
                if m & fixed_one == m:
                    vr += a
                    vi += b
            return (vr == 0 and vi == 0) == c.want_zero
        live = [i for i, m in enumerate(c.masks) if not m & zero]
        if not live:
            return c.want_zero
        if kernel.count_consistent(c.parent, fixed_one, free) > GAC_LIMIT:
            return True
        masks = [c.masks[i] for i in live]
        re = [c.re[i] for i in live]
        im = [c.im[i] for i in live]
        _, n_sat, and_m, or_m, _ = kernel.scan(masks, re, im, c.parent, fixed_one, free, c.want_zero)
        if n_sat == 0:
            return False
        force1 = and_m & free
        force0 = free & ~or_m
        if force1 or force0:
            for bit, v in enumerate(c.vars):
                if force1 >> bit & 1:
                    self.assign(v, 1, queue)
                elif force0 >> bit & 1:
                    self.assign(v, 0, queue)
        return True

    def propagate(self, queue) -> bool:
        pending = set()
        order = []
        for k in queue:
            if k not in pending:
                pending.add(k)
                order.append(k)
        queue.clear()
        i = 0
        while i < len(order):
            k = order[i]
            i += 1
            pending.discard(k)
            if not self.revise(k, queue):
                queue.clear()
                return False
            for k2 in queue:
                if k2 not in pending:
                    pending.add(k2)
                    order.append(k2)
            queue.clear()
        return True

    def dead(self, k) -> bool:
        """Every monomial of constraint ``k`` contains a variable set to 0."""
        val = self.val
        for vs in self.cons[k].monomial_vars():
            if all(val[v] != 0 for v in vs):
                return False
        return True

    def pick(self, priority: Sequence[int], ptr: int):
        """Next decision variable and the new scan pointer.

        Variables skipped by the scan stay skippable deeper in the branch: they
        are assigned, or every constraint watching them is dead, and both facts
        survive extension of the assignment.
        """
        val = self.val
        for k in priority:
            for v in self.cons[k].vars:
                if val[v] < 0:
                    return v, ptr
        watch = self.watch
        for v in range(ptr, self.n):
            if val[v] < 0 and not all(self.dead(k) for k in watch[v]):
                return v, v
        return -1, self.n

    def run(self, priority: Sequence[int]) -> bool:
        """Search from the current propagated state; True leaves a satisfying assignment."""
        stack: List[list] = []
        ptr = 0
        descend = True
        while True:
            if descend:
                v, ptr = self.pick(priority, ptr)
                if v < 0:
                    mark = len(self.trail)
                    if self.complete_and_check():
                        return True
                    self.undo(mark)
                else:
                    stack.append([v, -1, len(self.trail), ptr])
            if not stack:
                return False
            top = stack[-1]
            v, tried, mark, p = top
            self.undo(mark)
            if tried == 1:
                stack.pop()
                descend = False
                continue
            top[1] = tried + 1
            self.nodes += 1
            if self.nodes > self.cap:
                raise EnumerationCapError(self.nodes, self.cap, "search nodes")
            queue: List[int] = []
            self.assign(v, tried + 1, queue)
            descend = self.propagate(queue)
            ptr = p

    def complete_and_check(self) -> bool:
        """Default the remaining variables (0, or 1 under a present child) and check everything."""
        val, parent = self.val, self.parent
        rest = [v for v in range(self.n) if val[v] < 0]
        for v in rest:
            val[v] = 0
            self.trail.append(v)
        for v in range(self.n):
            p = parent[v]
            if val[v] == 1 and p >= 0 and val[p] == 0:
                val[p] = 1
        for c in self.cons:
            vr = vi = 0
            for vs, x, y in zip(c.monomial_vars(), c.re, c.im):
                if all(val[u] == 1 for u in vs):
                    vr += x
                    vi += y
            if (vr == 0 and vi == 0) != c.want_zero:
                return False
        return True


@dataclass(frozen=True)
class VanishResult:
    vanishes: bool
    bound: int
    witness: Optional[FinitePoint] = None
    value: Optional[GaussQ] = None
    nodes: int = 0

    @property
    def verdict(self) -> str:
        return "Vanishes" if self.vanishes else "Unknown"

    def __bool__(self):
        return self.vanishes

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "bound": self.bound, "nodes": self.nodes}
        if self.witness is not None:
            ctx = self.witness.ctx
            out["witness"] = [point_coord_text(ctx, c) for c in self.witness.sorted_coords()]
            out["value"] = str(self.value)
        return out


def default_bound(R: RelationSet, *fs: BoolFn) -> int:
    if R.ctx.group.kind != "free":
        return 0
    m = max([R.max_word_length()] + [f.max_word_length() for f in fs])
    return 2 * m


def _dense(system: ConstraintSystem):
    """Base constraints remapped onto the dense variable order, with watch lists (cached)."""
    if system._dense is None:
        e = system.relations.ctx.group.identity
        coords = [c for c in system.universe if c != (e, 0)]
        order = {c: k for k, c in enumerate(coords)}
        remap = {system._index[c]: order[c] for c in coords}
        cons = [_Constraint(tuple(remap[v] for v in c.vars), c.parent, c.masks, c.re, c.im, True, c.source)
                for c in system._encoded]
        watch: List[List[int]] = [[] for _ in coords]
        for k, c in enumerate(cons):
            for v in c.vars:
                watch[v].append(k)
        system._dense = (coords, order, cons, watch)
    return system._dense


def _search_for(system: ConstraintSystem, f: Optional[BoolFn], cap: int) -> _Search:
    e = system.relations.ctx.group.identity
    coords, order, cons, watch = _dense(system)
    if f is not None:
        coords = list(coords)
        order = dict(order)
        watch = list(watch)
        for c in sorted(_support(f, e), key=lambda c: (len(c[0]) if isinstance(c[0], tuple) else 0, c[0], c[1])):
            if c not in order:
                order[c] = len(coords)
                coords.append(c)
                watch.append([])
        target = _encode(f, order, e, want_zero=False, source="target")
        k = len(cons)
        cons = cons + [target]
        for v in target.vars:
            watch[v] = watch[v] + [k]
    parent = [order.get((g, 0), -1) if i else -1 for g, i in coords]
    s = _Search(len(coords), parent, cons, watch, cap)
    s.coords = coords
    return s


def _root_state(system: ConstraintSystem, cap: int):
    """Propagated root assignment of the relation constraints alone (cached)."""
    if not system._root_done:
        s = _search_for(system, None, cap)
        ok = s.propagate(list(range(len(s.cons))))
        system._root = list(s.val) if ok else None
        system._root_conflict = not ok
        system._root_done = True
    return system._root


_recorders: List[list] = []


@contextmanager
def recording():
    """Collect ``(f, R, result)`` for every vanishing query made inside the block."""
    log: list = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def vanishes_on_omega(f: BoolFn, R: RelationSet, L: Optional[int] = None, cap: int = DEFAULT_CAP) -> VanishResult:
    res = _vanishes(f, R, L, cap)
    for log in _recorders:
        log.append((f, R, res))
    return res


def _vanishes(f: BoolFn, R: RelationSet, L: Optional[int], cap: int) -> VanishResult:
    if f.ctx != R.ctx:
        raise GroupError("function and relations live over different contexts")
    if L is None:
        L = default_bound(R, f)
    if not f:
        return VanishResult(True, L)
    system = constraint_system(R, L, cap)
    root = _root_state(system, cap)
    if root is None:
        return VanishResult(True, L)
    s = _search_for(system, f, cap)
    s.val[: len(root)] = root
    target = len(s.cons) - 1
    if not s.propagate([target]):
        return VanishResult(True, L, nodes=s.nodes)
    if not s.run([target]):
        return VanishResult(True, L, nodes=s.nodes)
    e = R.ctx.group.identity
    pt = FinitePoint(R.ctx, [(e, 0)] + [c for c, b in zip(s.coords, s.val) if b == 1])
    return VanishResult(False, L, pt, f.evaluate(pt), s.nodes)


@dataclass(frozen=True)
class EqualResult:
    equal: bool
    bound: int
    g: object = None
    witness: Optional[VanishResult] = None

    @property
    def verdict(self) -> str:
        return "Equal" if self.equal else "Unknown"

    def __bool__(self):
        return self.equal

    def to_json(self, ctx: Optional[Context] = None) -> dict:
        out = {"verdict": self.verdict, "bound": self.bound}
        if not self.equal:
            out["at"] = ctx.group.format(self.g) if ctx is not None else repr(self.g)
            out["witness"] = self.witness.to_json()
        return out


def cp_equal_mod(x: CPElement, y: CPElement, R: RelationSet, L: Optional[int] = None, cap: int = DEFAULT_CAP) -> EqualResult:
    d = x - y
    if L is None:
        L = default_bound(R, *d.coeffs.values())
    for g in d.support():
        r = vanishes_on_omega(d.coeffs[g], R, L, cap)
        if not r.vanishes:
            return EqualResult(False, L, g, r)
    return EqualResult(True, L)


# ---------------------------------------------------------------------------
# sampling finite points of Omega_R


def sample_omega_points(R: RelationSet, rng: random.Random, count: int, radius: int = 4,
                        steps: int = 60, attempts: int | None = None) -> List[FinitePoint]:
    """Draw finite points of ``Omega_R`` by a randomized repair chase.

    Each attempt starts from ``{e}`` plus a few random coordinates of the unit
    ball and repeatedly adds coordinates to cure the first violated relation.
    Only points that pass :func:`omega_contains` are returned; sets without
    finite points (Cuntz-Krieger type relations, for instance) yield nothing.
    """
    ctx = R.ctx
    grp = ctx.group
    seeds = [c for c in _seed_coords(ctx)]
    found: List[FinitePoint] = []
    attempts = attempts if attempts is not None else 20 * count
    for _ in range(attempts):
        if len(found) >= count:
            break
        start = [c for c in seeds if rng.random() < 0.3]
        xi = _close(ctx, R, start)
        for _ in range(steps):
            bad = omega_violations(xi, R, first_only=True)
            if not bad:
                found.append(xi)
                break
            w = bad[0]
            cands = [(grp.multiply(w.t, g), i) for g, i in w.relation.coords()]
            cands = [c for c in cands if c not in xi.coords]
            if grp.kind == "free":
                cands = [c for c in cands if len(c[0]) <= radius]
            if not cands:
                break
            cands.sort(key=ctx.coord_key)
            xi = _close(ctx, R, list(xi.coords) + [rng.choice(cands)])
    return found


def _seed_coords(ctx: Context):
    grp = ctx.group
    for g in grp.ball(1):
        if g != grp.identity:
            yield (g, 0)
        for k in range(1, len(ctx.labels) + 1):
            yield (g, k)


def _close(ctx: Context, R: RelationSet, coords) -> FinitePoint:
    s = set(coords)
    if R.length_additivity:
        for g, _ in list(s):
            for k in range(len(g)):
                s.add((g[:k], 0))
    return FinitePoint.closure(ctx, s)
