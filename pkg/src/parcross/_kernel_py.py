"""Pure-Python enumeration kernel (reference and fallback).

Both kernels enumerate the *consistent* 0/1 assignments of ``k`` local
variables, where variable ``v`` with ``parent[v] >= 0`` may only be 1 if its
parent is 1. Parents never have parents themselves. Assignments are built as
``fixed_one | sub`` with ``sub`` ranging over subsets of the ``free`` mask.

A polynomial is given as parallel sequences ``masks``, ``re``, ``im``: its
value at assignment ``a`` is the sum of ``re[m] + i*im[m]`` over the monomials
with ``masks[m] & ~a == 0``. Coefficients are exact integers.
"""


def _split(parent, fixed_one, free):
    top = 0
    kids = []
    for v, p in enumerate(parent):
        bit = 1 << v
        if not free & bit:
            continue
        if p >= 0 and free >> p & 1:
            kids.append((bit, 1 << p))
        else:
            top |= bit
    checks = [(1 << v, 1 << p) for v, p in enumerate(parent) if p >= 0]
    return top, kids, checks


def _assignments(parent, fixed_one, free):
    top, kids, checks = _split(parent, fixed_one, free)
    P = top
    while True:
        a0 = fixed_one | P
        ok = True
        for cb, pb in checks:
            if a0 & cb and not a0 & pb:
                ok = False
                break
        if ok:
            allowed = 0
            for cb, pb in kids:
                if a0 & pb:
                    allowed |= cb
            sub = allowed
            while True:
                yield a0 | sub
                if sub == 0:
                    break
                sub = (sub - 1) & allowed
        if P == 0:
            break
        P = (P - 1) & top


def scan(masks, re, im, parent, fixed_one, free, want_zero):
    """Classify consistent completions by whether the polynomial vanishes.

    Returns ``(n_consistent, n_sat, and_mask, or_mask, first_sat)`` where a
    completion is *satisfying* when ``(value == 0) == want_zero``. ``and_mask``
    and ``or_mask`` aggregate the satisfying assignments (``-1``/``0`` sentinels
    become meaningless when ``n_sat == 0``); ``first_sat`` is the first one
    found in enumeration order, or ``-1``.
    """
    terms = list(zip(masks, re, im))
    n_cons = n_sat = 0
    and_m = -1
    or_m = 0
    first = -1
    for a in _assignments(parent, fixed_one, free):
        n_cons += 1
        vr = vi = 0
        for m, cr, ci in terms:
            if m & a == m:
                vr += cr
                vi += ci
        if (vr == 0 and vi == 0) == want_zero:
            n_sat += 1
            and_m &= a
            or_m |= a
            if first < 0:
                first = a
    return n_cons, n_sat, and_m, or_m, first


def max_abs2(masks, re, im, parent, fixed_one, free):
    """Maximum of ``|value|**2`` over consistent completions, with an argmax."""
    terms = list(zip(masks, re, im))
    best = -1
    arg = -1
    for a in _assignments(parent, fixed_one, free):
        vr = vi = 0
        for m, cr, ci in terms:
            if m & a == m:
                vr += cr
                vi += ci
        v = vr * vr + vi * vi
        if v > best:
            best = v
            arg = a
    return best, arg
