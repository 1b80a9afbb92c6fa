"""The commutative *-algebra spanned by finite products of coordinate indicators.

A *coordinate* is a pair ``(g, i)``: a group element and an index, ``0`` for the
plain copy of the group and ``k >= 1`` for the ``k``-th projection label. A
point of the space is a set of coordinates that contains ``(e, 0)`` and, with
``(g, k)``, also ``(g, 0)``. The indicator ``1[g;k]`` takes value 1 exactly at
points containing ``(g, k)``.

Elements are stored as exact linear combinations of *normalized* monomials: a
monomial never mentions ``(e, 0)``, which is identically 1, and never holds
``(g, 0)`` next to some ``(g, k)``, which already implies it. Distinct
normalized monomials are linearly independent functions, so equality of
functions is equality of the term maps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Tuple, Union

from . import kernel
from .errors import ContextMismatchError, EnumerationCapError, GroupError
from .group_words import GroupContext, GroupElement
from .scalars import ONE, GaussQ, format_scalar, is_rational_square, rational_sqrt

Coordinate = Tuple[GroupElement, int]
Monomial = FrozenSet[Coordinate]

DEFAULT_CAP = 1 << 20
ZERO_INDEX = 0


@dataclass(frozen=True)
class Context:
    """Ambient data for coordinates: the group and the projection labels."""

    group: GroupContext
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise GroupError(f"duplicate projection labels {labels}")
        if "0" in labels:
            raise GroupError("projection label '0' is reserved for the group copy")
        object.__setattr__(self, "labels", labels)

    @property
    def e(self):
        return self.group.identity

    def index(self, i: Union[int, str]) -> int:
        """Map a label (or ``'0'``) or an already numeric index to the numeric index."""
        if isinstance(i, bool):
            raise GroupError(f"bad index {i!r}")
        if isinstance(i, int):
            if not 0 <= i <= len(self.labels):
                raise GroupError(f"projection index {i} out of range")
            return i
        if i == "0":
            return 0
        try:
            return self.labels.index(i) + 1
        except ValueError:
            raise GroupError(f"unknown projection label {i!r}") from None

    def label(self, i: int) -> str:
        return "0" if i == 0 else self.labels[i - 1]

    def coord_key(self, c: Coordinate):
        return (self.group.sort_key(c[0]), c[1])

    def format_coord(self, c: Coordinate) -> str:
        w = self.group.format(c[0])
        return w if c[1] == 0 else f"{w};{self.label(c[1])}"

    def check_coord(self, c) -> Coordinate:
        g, i = c
        self.group.check(g)
        return (g, self.index(i))

    def normalize(self, coords: Iterable[Coordinate]) -> Monomial:
        return normalize_monomial(coords, self.group.identity)

    # convenience constructors
    def char(self, g, i: Union[int, str] = 0) -> "BoolFn":
        return char(self, g, i)

    def unit(self) -> "BoolFn":
        return BoolFn(self, {frozenset(): ONE}, _trusted=True)

    def zero(self) -> "BoolFn":
        return BoolFn(self, {}, _trusted=True)

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "projections": list(self.labels)}


def normalize_monomial(coords: Iterable[Coordinate], e) -> Monomial:
    s = set(coords)
    s.discard((e, 0))
    if any(i for _, i in s):
        s.difference_update([(g, 0) for g, i in s if i])
    return frozenset(s)


def _same(a: "BoolFn", b: "BoolFn") -> None:
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ContextMismatchError("operands live over different contexts")


class BoolFn:
    """An exact element of the coordinate algebra; immutable and hashable."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: Context, terms: Dict[Monomial, GaussQ] | None = None, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            acc: Dict[Monomial, GaussQ] = {}
            e = ctx.group.identity
            for m, c in (terms or {}).items():
                c = GaussQ.coerce(c)
                if not c:
                    continue
                m = normalize_monomial((ctx.check_coord(x) for x in m), e)
                acc[m] = acc[m] + c if m in acc else c
            self.terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # -- structure ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BoolFn):
            return NotImplemented
        return (self.ctx is other.ctx or self.ctx == other.ctx) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list:
        """Monomials in a deterministic order."""
        key = self.ctx.coord_key
        return sorted(self.terms, key=lambda m: (len(m), sorted(map(key, m))))

    def coords(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m)
        return out

    def max_word_length(self) -> int:
        return max((len(g) for m in self.terms for g, _ in m), default=0)

    # -- *-algebra ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BoolFn):
            other = _lift(self.ctx, other)
            if other is None:
                return NotImplemented
        _same(self, other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                s = acc[m] + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
            else:
                acc[m] = c
        return BoolFn(self.ctx, acc, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return BoolFn(self.ctx, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, BoolFn):
            other = _lift(self.ctx, other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, lam) -> "BoolFn":
        lam = GaussQ.coerce(lam)
        if not lam:
            return self.ctx.zero()
        return BoolFn(self.ctx, {m: c * lam for m, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, BoolFn):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        _same(self, other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ctx.zero()
        e = self.ctx.group.identity
        acc: Dict[Monomial, GaussQ] = {}
        for m1, c1 in a.items():
            p1 = any(i for _, i in m1)
            for m2, c2 in b.items():
                if not m1:
                    m = m2
                elif not m2 or m2 <= m1:
                    m = m1
                elif m1 <= m2:
                    m = m2
                elif p1 or any(i for _, i in m2):
                    m = normalize_monomial(m1 | m2, e)
                else:
                    m = m1 | m2
                c = c1 * c2
                if m in acc:
                    s = acc[m] + c
                    if s:
                        acc[m] = s
                    else:
                        del acc[m]
                else:
                    acc[m] = c
        return BoolFn(self.ctx, acc, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def conj(self) -> "BoolFn":
        if all(c.im == 0 for c in self.terms.values()):
            return self
        return BoolFn(self.ctx, {m: c.conj() for m, c in self.terms.items()}, _trusted=True)

    def restrict(self, g) -> "BoolFn":
        """Multiply by the indicator of ``(g, 0)``."""
        return self * char(self.ctx, g, 0)

    def is_restricted_to(self, g) -> bool:
        return self.restrict(g) == self

    # -- evaluation ----------------------------------------------------------
    def evaluate(self, point: "FinitePoint | Iterable[Coordinate]") -> GaussQ:
        coords = point.coords if isinstance(point, FinitePoint) else frozenset(point)
        total = GaussQ(0)
        for m, c in self.terms.items():
            if m <= coords:
                total = total + c
        return total

    def closed_support(self) -> list:
        """Coordinates of all terms plus their ``(g, 0)`` parents plus ``(e, 0)``, sorted."""
        e = self.ctx.group.identity
        out = {(e, 0)}
        for m in self.terms:
            for g, i in m:
                out.add((g, i))
                if i:
                    out.add((g, 0))
        return sorted(out, key=self.ctx.coord_key)

    def sup_norm(self, cap: int = DEFAULT_CAP):
        """Exact sup of ``|f|`` over the space.

        Returns a :class:`~fractions.Fraction` when the maximum is rational,
        and a :class:`Surd` holding the exact squared maximum otherwise.
        """
        if not self.terms:
            return Fraction(0)
        q, _ = _max_abs2(self, cap)
        return Fraction(rational_sqrt(q)) if is_rational_square(q) else Surd(q)

    def sup_point(self, cap: int = DEFAULT_CAP) -> "FinitePoint":
        """A point where ``|f|`` attains its sup."""
        _, pt = _max_abs2(self, cap)
        return pt

    # -- text ----------------------------------------------------------------
    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            factors = "".join(
                f"1[{self.ctx.format_coord(x)}]" for x in sorted(m, key=self.ctx.coord_key)
            ) or "1[]"
            scal = format_scalar(c)
            parts.append(factors if c == ONE else f"{scal}*{factors}")
        return " + ".join(parts)

    __str__ = format

    def __repr__(self):
        return f"BoolFn({self.format()})"


def _lift(ctx, x):
    try:
        c = GaussQ.coerce(x)
    except TypeError:
        return None
    return BoolFn(ctx, {frozenset(): c} if c else {}, _trusted=True)


def char(ctx: Context, g, i: Union[int, str] = 0) -> BoolFn:
    """The indicator ``1[g;i]``; ``char(e, 0)`` is the unit."""
    ctx.group.check(g)
    k = ctx.index(i)
    m = normalize_monomial([(g, k)], ctx.group.identity)
    return BoolFn(ctx, {m: ONE}, _trusted=True)


def monomial(ctx: Context, coords: Iterable[Coordinate], coeff=1) -> BoolFn:
    return BoolFn(ctx, {frozenset(ctx.check_coord(c) for c in coords): coeff})


@dataclass(frozen=True)
class Surd:
    """A nonnegative real known exactly through its rational square."""

    square: Fraction

    def __float__(self):
        return math.sqrt(self.square)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.square == other.square
        if isinstance(other, (int, Fraction)):
            return other >= 0 and Fraction(other) ** 2 == self.square
        return NotImplemented

    def __hash__(self):
        return hash(("surd", self.square))

    def __str__(self):
        return f"sqrt({self.square})"


def squared(x) -> Fraction:
    """Exact square of a value returned by :meth:`BoolFn.sup_norm`."""
    return x.square if isinstance(x, Surd) else Fraction(x) ** 2


def _local_problem(f: BoolFn, coords: list):
    """Encode ``f`` as kernel input over local variables ``coords`` (``(e, 0)`` excluded)."""
    pos = {c: k for k, c in enumerate(coords)}
    parent = [pos.get((g, 0), -1) if i else -1 for g, i in coords]
    den = 1
    for c in f.terms.values():
        den = math.lcm(den, c.denominator())
    masks, re, im = [], [], []
    for m, c in f.terms.items():
        mask = 0
        for x in m:
            mask |= 1 << pos[x]
        masks.append(mask)
        re.append(int(c.re * den))
        im.append(int(c.im * den))
    return parent, masks, re, im, den


def _max_abs2(f: BoolFn, cap: int):
    e = f.ctx.group.identity
    coords = [c for c in f.closed_support() if c != (e, 0)]
    parent, masks, re, im, den = _local_problem(f, coords)
    free = (1 << len(coords)) - 1
    need = kernel.count_consistent(parent, 0, free)
    if need > cap:
        raise EnumerationCapError(need, cap)
    best, arg = kernel.max_abs2(masks, re, im, parent, 0, free)
    pt = FinitePoint(f.ctx, [(e, 0)] + [c for k, c in enumerate(coords) if arg >> k & 1])
    return Fraction(best, den * den), pt


class FinitePoint:
    """A finitely supported point: exactly the listed coordinates are 1."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: Context, coords: Iterable[Coordinate]):
        coords = frozenset(ctx.check_coord(c) for c in coords)
        e = ctx.group.identity
        if (e, 0) not in coords:
            raise GroupError("a point must contain (e, 0)")
        for g, i in coords:
            if i and (g, 0) not in coords:
                raise GroupError(f"point contains {ctx.format_coord((g, i))} but not its group coordinate")
        self.ctx = ctx
        self.coords = coords

    @classmethod
    def closure(cls, ctx: Context, coords: Iterable[Coordinate]) -> "FinitePoint":
        """Smallest point containing ``coords``."""
        s = {ctx.check_coord(c) for c in coords}
        s.add((ctx.group.identity, 0))
        s.update([(g, 0) for g, i in s if i])
        return cls(ctx, s)

    def __contains__(self, c):
        return c in self.coords

    def group_part(self) -> list:
        """Elements ``g`` with ``(g, 0)`` in the point, sorted."""
        return sorted((g for g, i in self.coords if i == 0), key=self.ctx.group.sort_key)

    def __eq__(self, other):
        return isinstance(other, FinitePoint) and self.coords == other.coords and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coords)

    def sorted_coords(self) -> list:
        return sorted(self.coords, key=self.ctx.coord_key)

    def format(self) -> str:
        return "{" + ", ".join(point_coord_text(self.ctx, c) for c in self.sorted_coords()) + "}"

    __str__ = format

    def __repr__(self):
        return f"FinitePoint({self.format()})"


def point_coord_text(ctx: Context, c: Coordinate) -> str:
    """Coordinate text with the empty word written ``e``."""
    w = ctx.group.format(c[0]) or "e"
    return w if c[1] == 0 else f"{w};{ctx.label(c[1])}"


def consistent_assignments(ctx: Context, coords: Iterable[Coordinate]):
    """Yield every point supported on ``coords`` (plus ``(e, 0)``) as a frozenset.

    A plain generator over subsets; meant for small supports and tests.
    """
    e = ctx.group.identity
    coords = [c for c in dict.fromkeys(coords) if c != (e, 0)]
    n = len(coords)
    for bits in range(1 << n):
        s = {(e, 0)}
        for k in range(n):
            if bits >> k & 1:
                s.add(coords[k])
        if all(i == 0 or (g, 0) in s for g, i in s):
            yield frozenset(s)
