"""Cuntz-Krieger type and graph presentations, and relation-preservation checks.

A presentation is a free-group context with projection labels and a
:class:`RelationSet`. Relations are written as functions on ``X_G``: the
algebra word ``[r] P_i [r]^*`` becomes ``1[r;i]`` and ``[r][r]^*`` becomes
``1[r]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coordinate_algebra import DEFAULT_CAP, BoolFn, Context, char
from .crossed_product import CPElement, embed, one, pi, proj, word_image
from .errors import GroupError, ParseError
from .group_words import FreeGroup, reduce_letters
from .relations import EqualResult, RelationSet, cp_equal_mod, instantiate

# ---------------------------------------------------------------------------
# input data


@dataclass(frozen=True)
class Matrix01:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if n == 0:
            raise GroupError("matrix must be nonempty")
        for r in rows:
            if len(r) != n:
                raise GroupError("matrix must be square")
            for x in r:
                if isinstance(x, bool) or x not in (0, 1):
                    raise GroupError(f"matrix entries must be 0 or 1, got {x!r}")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, n: int) -> "Matrix01":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def transpose(self) -> "Matrix01":
        return Matrix01(tuple(zip(*self.entries)))

    def is_permutation(self) -> bool:
        return all(sum(r) == 1 for r in self.entries) and all(sum(c) == 1 for c in zip(*self.entries))

    def permutation(self) -> List[int]:
        """``sigma`` with ``b[i][sigma(i)] = 1`` (0-based)."""
        if not self.is_permutation():
            raise GroupError("matrix is not a permutation matrix")
        return [r.index(1) for r in self.entries]

    def matmul(self, other: "Matrix01") -> "Matrix01":
        n = self.n
        if other.n != n:
            raise GroupError("size mismatch")
        return Matrix01(tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n))
            for i in range(n)))

    def to_json(self):
        return [list(r) for r in self.entries]


def load_matrices(obj) -> Tuple[Matrix01, Matrix01]:
    """``{"n": int, "A": [[...]], "B": [[...]]}`` to a matrix pair."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = obj["n"]
        A, B = Matrix01(obj["A"]), Matrix01(obj["B"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad matrix file: {exc}") from None
    if A.n != n or B.n != n:
        raise GroupError(f"matrices must be {n} x {n}")
    return A, B


def matrices_to_json(A: Matrix01, B: Matrix01) -> dict:
    return {"n": A.n, "A": A.to_json(), "B": B.to_json()}


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    rng: str


@dataclass(frozen=True)
class DirectedGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        es = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        if not vs:
            raise GroupError("graph needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise GroupError("vertex labels must be distinct")
        names = [e.name for e in es]
        if len(set(names)) != len(names):
            raise GroupError("edge labels must be distinct")
        for e in es:
            for end in (e.src, e.rng):
                if end not in vs:
                    raise GroupError(f"edge {e.name!r} has dangling endpoint {end!r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    def into(self, v: str) -> List[Edge]:
        """Edges with range ``v``."""
        return [e for e in self.edges if e.rng == v]

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"name": e.name, "src": e.src, "rng": e.rng} for e in self.edges]}


def load_graph(obj) -> DirectedGraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        edges = [Edge(str(e["name"]), str(e["src"]), str(e["rng"])) for e in obj.get("edges", [])]
        return DirectedGraph(tuple(obj["vertices"]), tuple(edges))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"bad graph file: {exc}") from None


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    ctx: Context
    relations: RelationSet
    name: str = ""

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.relations == other.relations

    def __hash__(self):
        return hash(self.relations)

    def to_json(self) -> dict:
        return {"name": self.name, "context": self.ctx.to_json(),
                "relations": [f.format() for f in self.relations.explicit],
                "length_additivity": self.relations.length_additivity}


def ck_context(n: int) -> Context:
    names = [str(i) for i in range(1, n + 1)]
    return Context(FreeGroup(names), tuple(names))


def build_ck(A: Matrix01, B: Matrix01) -> Presentation:
    """Relations of ``O_{A,B}`` on generators ``1..n`` with projections ``1..n``."""
    n = A.n
    if B.n != n:
        raise GroupError("A and B must have the same size")
    ctx = ck_context(n)
    e = ctx.group.identity
    P = [char(ctx, e, j) for j in range(1, n + 1)]
    rels = [sum(P[1:], P[0]) - ctx.unit()]
    for i in range(n):
        g = ctx.group.gen(str(i + 1))
        gi = ctx.group.inverse(g)
        rels.append(char(ctx, gi) - _combo(ctx, A.entries[i], P))
        rels.append(char(ctx, g) - _combo(ctx, B.entries[i], P))
    return Presentation(ctx, RelationSet(ctx, tuple(rels), True), f"O_(A,B) n={n}")


def _combo(ctx, row, P):
    out = ctx.zero()
    for a, p in zip(row, P):
        if a:
            out = out + p
    return out


def dualize_ck(A: Matrix01, B: Matrix01) -> Presentation:
    return build_ck(B, A)


def build_graph(E: DirectedGraph) -> Presentation:
    """Relations of the graph presentation: generators are edges, projections vertices."""
    ctx = Context(FreeGroup([e.name for e in E.edges]), E.vertices)
    grp = ctx.group
    e = grp.identity
    Q = {v: char(ctx, e, v) for v in E.vertices}
    S = {a.name: char(ctx, grp.gen(a.name)) for a in E.edges}
    Sinv = {a.name: char(ctx, grp.inverse(grp.gen(a.name))) for a in E.edges}
    vs, es = E.vertices, E.edges
    rels = []
    for x in range(len(vs)):
        for y in range(x + 1, len(vs)):
            rels.append(Q[vs[x]] * Q[vs[y]])
    for a in es:
        rels.append(Sinv[a.name] - Q[a.src])
    for x in range(len(es)):
        for y in range(x + 1, len(es)):
            rels.append(S[es[x].name] * S[es[y].name])
    for v in vs:
        incoming = E.into(v)
        if incoming:
            total = ctx.zero()
            for a in incoming:
                total = total + S[a.name]
            rels.append(Q[v] - total)
    for a in es:
        rels.append(S[a.name] * Q[a.rng] - S[a.name])
    return Presentation(ctx, RelationSet(ctx, tuple(r for r in rels if r), True), "graph")


def relation_image(f: BoolFn, word_img, proj_img) -> CPElement:
    """``sum lam prod [r] P_i [r]^*`` with ``[r] -> word_img(r)`` and ``P_i -> proj_img(i)``.

    The slot ``i = 0`` contributes ``[r][r]^*``.
    """
    total = None
    for m, c in f.terms.items():
        term = None
        for g, i in sorted(m, key=f.ctx.coord_key):
            w = word_img(g)
            x = w * w.star() if i == 0 else w * proj_img(i) * w.star()
            term = x if term is None else term * x
        if term is None:
            term = proj_img(None)
        term = term.scale(c)
        total = term if total is None else total + term
    if total is None:
        return proj_img(None).scale(0)
    return total


def translation_image(f: BoolFn) -> CPElement:
    """Image of a relation under ``[r] -> 1[r] d(r)``, ``P_i -> 1[e;i] d(e)``."""
    ctx = f.ctx
    return relation_image(f, lambda g: pi(ctx, g), lambda i: one(ctx) if i is None else proj(ctx, i))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class GeneratorMap:
    """Images of source generators (target group elements) and projections."""

    group_map: Dict[int, object]
    proj_map: Dict[int, CPElement]

    def word(self, src_ctx: Context, tgt_ctx: Context, g):
        letters = []
        for x in g:
            img = self.group_map[abs(x)]
            if x < 0:
                img = tgt_ctx.group.inverse(img)
            letters.extend(img)
        return reduce_letters(letters)


def identity_map(P: Presentation) -> GeneratorMap:
    ctx = P.ctx
    k = ctx.group.rank
    return GeneratorMap({i: (i,) for i in range(1, k + 1)},
                        {j: proj(ctx, j) for j in range(1, len(ctx.labels) + 1)})


def permutation_morphism(A: Matrix01, B: Matrix01) -> Tuple[GeneratorMap, Presentation]:
    """Map ``O_{A,B} -> O_{B^t A, I}`` sending generator ``i`` to ``sigma(i)``."""
    sigma = B.permutation()
    At = B.transpose().matmul(A)
    tgt = build_ck(At, Matrix01.identity(A.n))
    ctx = tgt.ctx
    gm = {i + 1: (sigma[i] + 1,) for i in range(A.n)}
    pm = {j: proj(ctx, j) for j in range(1, A.n + 1)}
    return GeneratorMap(gm, pm), tgt


@dataclass
class CheckEntry:
    what: str
    result: EqualResult

    @property
    def verdict(self) -> str:
        return "Pass" if self.result.equal else "Unknown"

    def to_json(self, ctx: Context) -> dict:
        out = {"check": self.what, "verdict": self.verdict, "bound": self.result.bound}
        if not self.result.equal:
            out["detail"] = self.result.to_json(ctx)
        return out


@dataclass
class Report:
    title: str
    ctx: Context
    entries: List[CheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.result.equal for e in self.entries)

    @property
    def verdict(self) -> str:
        return "Pass" if self.passed else "Unknown"

    def failures(self) -> List[CheckEntry]:
        return [e for e in self.entries if not e.result.equal]

    def to_json(self) -> dict:
        return {"title": self.title, "verdict": self.verdict,
                "checks": [e.to_json(self.ctx) for e in self.entries]}

    def format(self) -> str:
        lines = [f"{self.title}: {self.verdict}"]
        width = max((len(e.what) for e in self.entries), default=0)
        for e in self.entries:
            lines.append(f"  {e.what.ljust(width)}  {e.verdict}")
            if not e.result.equal:
                w = e.result.witness
                lines.append(f"    at d({self.ctx.group.format(e.result.g)}), witness {w.witness.format()}")
        return "\n".join(lines)


def check_morphism(M: GeneratorMap, src: Presentation, tgt: Presentation, L: int,
                   cap: int = DEFAULT_CAP) -> Report:
    """Images of every source relation instance must vanish modulo target relations."""
    sctx, tctx = src.ctx, tgt.ctx
    R = tgt.relations
    cache: Dict = {}

    def word_img(g):
        if g not in cache:
            cache[g] = word_image(tctx, M.word(sctx, tctx, g))
        return cache[g]

    def proj_img(i):
        return one(tctx) if i is None else M.proj_map[i]

    report = Report("check-morphism", tctx)
    zero = one(tctx).scale(0)
    for j in sorted(M.proj_map):
        p = M.proj_map[j]
        label = sctx.label(j)
        report.entries.append(CheckEntry(f"P_{label} self-adjoint", cp_equal_mod(p.star(), p, R, L, cap)))
        report.entries.append(CheckEntry(f"P_{label} idempotent", cp_equal_mod(p * p, p, R, L, cap)))
    for f in instantiate(src.relations, L, cap):
        x = relation_image(f, word_img, proj_img)
        report.entries.append(CheckEntry(f.format(), cp_equal_mod(x, zero, R, L, cap)))
    return report


def check_partial_isometries(E: DirectedGraph, Lw: int, L: Optional[int], cap: int = DEFAULT_CAP,
                             P: Optional[Presentation] = None) -> Report:
    """``x x* x = x`` for each reduced word and commuting range projections for each pair."""
    P = P or build_graph(E)
    ctx = P.ctx
    R = P.relations
    words = ctx.group.ball(Lw, cap)
    imgs = {w: word_image(ctx, w) for w in words}
    ranges = {w: imgs[w] * imgs[w].star() for w in words}
    report = Report("check-graph", ctx)
    fmt = lambda w: ctx.group.format(w) or "e"
    for w in words:
        x = imgs[w]
        report.entries.append(CheckEntry(f"isometry {fmt(w)}", cp_equal_mod(x * x.star() * x, x, R, L, cap)))
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            p, q = ranges[words[a]], ranges[words[b]]
            report.entries.append(CheckEntry(f"commute {fmt(words[a])} | {fmt(words[b])}",
                                             cp_equal_mod(p * q, q * p, R, L, cap)))
    return report


# ---------------------------------------------------------------------------
# points of Omega for O_{A,B}


def viable_labels(A: Matrix01, B: Matrix01) -> List[int]:
    """Largest label set in which every forced neighbour can be labelled again.

    A point of ``Omega`` for ``O_{A,B}`` is a subtree of the Cayley graph with one
    label per vertex. A vertex labelled ``l`` has the edge ``u -> u i`` exactly
    when ``b[i][l] = 1`` and ``u -> u i^-1`` exactly when ``a[i][l] = 1``; the new
    vertex needs a label ``l'`` with ``a[i][l'] = 1`` or ``b[i][l'] = 1``
    respectively.
    """
    n = A.n
    V = set(range(n))
    changed = True
    while changed:
        changed = False
        for l in sorted(V):
            ok = all(any(A[i, m] for m in V) for i in range(n) if B[i, l]) and \
                all(any(B[i, m] for m in V) for i in range(n) if A[i, l])
            if not ok:
                V.discard(l)
                changed = True
    return sorted(V)


def sample_ck_truncation(A: Matrix01, B: Matrix01, rng, depth: int, ctx: Optional[Context] = None):
    """Coordinates of length <= ``depth`` of a random point of ``Omega`` for ``O_{A,B}``.

    Returns ``(point, complete)`` or ``None`` when ``Omega`` is empty. Any function
    whose coordinates have length <= ``depth`` takes the same value at the
    truncation as at the full point; ``complete`` means the tree closed up
    before the depth limit, so the truncation is itself a point of ``Omega``.
    """
    ctx = ctx or ck_context(A.n)
    V = viable_labels(A, B)
    if not V:
        return None
    n = A.n

    def children(u, l):
        for i in range(n):
            if B[i, l]:
                yield i + 1, [m for m in V if A[i, m]]
            if A[i, l]:
                yield -(i + 1), [m for m in V if B[i, m]]

    return _grow_tree(ctx, rng, depth, rng.choice(V), children)


def sample_graph_truncation(E: DirectedGraph, rng, depth: int, ctx: Optional[Context] = None):
    """Like :func:`sample_ck_truncation` for the graph presentation of ``E``.

    Vertex ``u`` labelled ``v`` continues along ``a^-1`` for every edge with
    ``s(a) = v`` and along exactly one ``a`` with ``r(a) = v`` when there is one.
    The bare point ``{e}`` is drawn with a small probability.
    """
    ctx = ctx or build_graph(E).ctx
    from .coordinate_algebra import FinitePoint

    if rng.random() < 0.1:
        return FinitePoint(ctx, [((), 0)]), True
    names = {a.name: k + 1 for k, a in enumerate(E.edges)}
    vindex = {v: k for k, v in enumerate(E.vertices)}

    def children(u, l):
        v = E.vertices[l]
        if u and u[-1] < 0:
            # reached from the parent along an edge; that edge is the forward one
            incoming = [E.edges[-u[-1] - 1]]
        else:
            incoming = E.into(v)
            if incoming:
                incoming = [rng.choice(incoming)]
        for a in incoming:
            yield names[a.name], [vindex[a.src]]
        for a in E.edges:
            if a.src == v:
                yield -names[a.name], [vindex[a.rng]]

    return _grow_tree(ctx, rng, depth, rng.randrange(len(E.vertices)), children)


def _grow_tree(ctx: Context, rng, depth: int, root_label: int, children):
    from .coordinate_algebra import FinitePoint

    label = {(): root_label}
    layer = [()]
    for _ in range(depth):
        nxt = []
        for u in layer:
            for x, options in children(u, label[u]):
                if u and u[-1] == -x:
                    continue
                v = u + (x,)
                label[v] = rng.choice(options)
                nxt.append(v)
        layer = nxt
    complete = all(not any(not (u and u[-1] == -x) for x, _ in children(u, label[u])) for u in layer)
    coords = [(u, 0) for u in label] + [(u, l + 1) for u, l in label.items()]
    return FinitePoint(ctx, coords), complete
