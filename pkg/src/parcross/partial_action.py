"""Partial action of the group on points and on the coordinate algebra.

``translate_point(t, xi)`` sends a point containing ``t^-1`` to
``{(t g, i) : (g, i) in xi}``. ``alpha(t, f)`` is the dual map on functions; it
is defined on every ``f`` by first restricting to ``1[t^-1]``, which agrees with
the partially defined map on its domain.
"""
from __future__ import annotations

from typing import Dict

from .coordinate_algebra import BoolFn, FinitePoint, Monomial, normalize_monomial
from .errors import GroupError
from .scalars import GaussQ


def translate_point(t, xi: FinitePoint) -> FinitePoint:
    grp = xi.ctx.group
    grp.check(t)
    if (grp.inverse(t), 0) not in xi.coords:
        raise GroupError(f"point does not contain {grp.format(grp.inverse(t)) or 'e'}")
    mul = grp.multiply
    return FinitePoint(xi.ctx, [(mul(t, g), i) for g, i in xi.coords])


def alpha(t, f: BoolFn) -> BoolFn:
    grp = f.ctx.group
    grp.check(t)
    e = grp.identity
    if t == e:
        return f
    mul = grp.multiply
    tt = (t, 0)
    acc: Dict[Monomial, GaussQ] = {}
    for m, c in f.terms.items():
        # restriction to 1[t^-1] lands on (e, 0) after translation and drops out
        moved = {(mul(t, g), i) for g, i in m}
        moved.add(tt)
        key = normalize_monomial(moved, e)
        if key in acc:
            s = acc[key] + c
            if s:
                acc[key] = s
            else:
                del acc[key]
        else:
            acc[key] = c
    return BoolFn(f.ctx, acc, _trusted=True)


def in_domain(t, f: BoolFn) -> bool:
    """True when ``f`` is already supported where ``t^-1`` is present."""
    return f.restrict(f.ctx.group.inverse(t)) == f
