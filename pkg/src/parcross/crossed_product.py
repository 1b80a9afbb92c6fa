"""Finite formal sums ``sum_g a_g d(g)`` over the partial action.

Products use ``(a d(g)) (b d(h)) = alpha_g(alpha_{g^-1}(a) b) d(gh)`` and the
involution is ``(a d(g))^* = alpha_{g^-1}(conj a) d(g^-1)``. Every stored
coefficient ``a_g`` satisfies ``a_g = 1[g] a_g`` and is nonzero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Union

from .coordinate_algebra import DEFAULT_CAP, BoolFn, Context, Surd, char
from .errors import ContextMismatchError, GroupError
from .partial_action import alpha
from .scalars import GaussQ


class CPElement:
    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: Context, coeffs: Dict | None = None, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.coeffs = coeffs
        else:
            acc: Dict = {}
            for g, a in (coeffs or {}).items():
                ctx.group.check(g)
                if a.ctx != ctx:
                    raise ContextMismatchError("coefficient over a different context")
                a = a.restrict(g)
                if g in acc:
                    a = acc[g] + a
                if a:
                    acc[g] = a
                else:
                    acc.pop(g, None)
            self.coeffs = acc
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, CPElement):
            return NotImplemented
        return (self.ctx is other.ctx or self.ctx == other.ctx) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list:
        return sorted(self.coeffs, key=self.ctx.group.sort_key)

    def coeff(self, g) -> BoolFn:
        return self.coeffs.get(g) or self.ctx.zero()

    def _check(self, other):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatchError("operands live over different contexts")

    def __add__(self, other):
        if not isinstance(other, CPElement):
            return NotImplemented
        self._check(other)
        acc = dict(self.coeffs)
        for g, b in other.coeffs.items():
            if g in acc:
                s = acc[g] + b
                if s:
                    acc[g] = s
                else:
                    del acc[g]
            else:
                acc[g] = b
        return CPElement(self.ctx, acc, _trusted=True)

    def __neg__(self):
        return CPElement(self.ctx, {g: -a for g, a in self.coeffs.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, CPElement):
            return NotImplemented
        return self + (-other)

    def scale(self, lam) -> "CPElement":
        lam = GaussQ.coerce(lam)
        if not lam:
            return zero(self.ctx)
        return CPElement(self.ctx, {g: a.scale(lam) for g, a in self.coeffs.items()}, _trusted=True)

    def __rmul__(self, lam):
        return self.scale(lam)

    def __mul__(self, other):
        if not isinstance(other, CPElement):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        grp = self.ctx.group
        acc: Dict = {}
        for g, a in self.coeffs.items():
            gi = grp.inverse(g)
            back = alpha(gi, a)
            for h, b in other.coeffs.items():
                c = alpha(g, back * b)
                if not c:
                    continue
                gh = grp.multiply(g, h)
                if gh in acc:
                    s = acc[gh] + c
                    if s:
                        acc[gh] = s
                    else:
                        del acc[gh]
                else:
                    acc[gh] = c
        return CPElement(self.ctx, acc, _trusted=True)

    def star(self) -> "CPElement":
        grp = self.ctx.group
        out = {}
        for g, a in self.coeffs.items():
            gi = grp.inverse(g)
            out[gi] = alpha(gi, a.conj())
        return CPElement(self.ctx, out, _trusted=True)

    def one_norm(self, cap: int = DEFAULT_CAP):
        """``sum_g sup|a_g|``: exact Fraction when every term is rational, else a :class:`SurdSum`."""
        norms = [self.coeffs[g].sup_norm(cap) for g in self.support()]
        if all(isinstance(x, Fraction) for x in norms):
            return sum(norms, Fraction(0))
        return SurdSum(tuple(norms))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        grp = self.ctx.group
        for g in self.support():
            a = self.coeffs[g]
            body = a.format()
            if len(a) > 1:
                body = f"({body})"
            parts.append(f"{body} d({grp.format(g)})")
        return " + ".join(parts)

    __str__ = format

    def __repr__(self):
        return f"CPElement({self.format()})"


class SurdSum:
    """A finite sum of nonnegative reals, each rational or a :class:`Surd`."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(terms)

    def __float__(self):
        return float(sum(float(t) for t in self.terms))

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)

    def __repr__(self):
        return f"SurdSum({self})"


def norm_value(x) -> float:
    """Float view of a norm returned by :meth:`CPElement.one_norm` or ``sup_norm``."""
    return float(x)


def zero(ctx: Context) -> CPElement:
    return CPElement(ctx, {}, _trusted=True)


def mono(f: BoolFn, g) -> CPElement:
    """``(f 1[g]) d(g)``; zero when the restriction vanishes."""
    f.ctx.group.check(g)
    a = f.restrict(g)
    return CPElement(f.ctx, {g: a} if a else {}, _trusted=True)


def one(ctx: Context) -> CPElement:
    return mono(ctx.unit(), ctx.group.identity)


def embed(f: BoolFn) -> CPElement:
    return mono(f, f.ctx.group.identity)


def pi(ctx: Context, g) -> CPElement:
    """Image ``1[g] d(g)`` of the group element ``g``."""
    return mono(char(ctx, g, 0), g)


def proj(ctx: Context, j: Union[int, str]) -> CPElement:
    """Image ``1[e;j] d(e)`` of the projection ``P_j``."""
    k = ctx.index(j)
    if k == 0:
        raise GroupError("projection index must name a label, not 0")
    return mono(char(ctx, ctx.group.identity, k), ctx.group.identity)


def word_image(ctx: Context, letters: Union[Iterable[int], str]) -> CPElement:
    """Ordered product of ``pi`` over the letters (not reduced first)."""
    grp = ctx.group
    if grp.kind != "free":
        raise GroupError("word_image needs a free group")
    if isinstance(letters, str):
        letters = _letters_unreduced(grp, letters)
    out = one(ctx)
    for x in letters:
        out = out * pi(ctx, (x,))
    return out


def _letters_unreduced(grp, text: str) -> list:
    letters = []
    for tok in text.split():
        letters.extend(grp.parse(tok))
    return letters
