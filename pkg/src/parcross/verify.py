"""Seeded identity suites over the free group on ``a, b`` with projections ``1, 2``.

Every suite draws its own samples from ``random.Random(seed)`` and returns a
:class:`SuiteResult`; a failure is an exact identity that did not hold.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .coordinate_algebra import BoolFn, Context, FinitePoint, char, monomial
from .crossed_product import CPElement, embed, mono, one, pi, proj
from .group_words import FreeGroup
from .partial_action import alpha, translate_point
from .scalars import GaussQ


def default_context() -> Context:
    return Context(FreeGroup(["a", "b"]), ("1", "2"))


@dataclass
class SuiteResult:
    name: str
    samples: int
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.name, "samples": self.samples, "passed": self.passed,
                "failures": self.failures[:10]}


# -- sampling ---------------------------------------------------------------


def random_word(rng: random.Random, ctx: Context, max_len: int):
    """A reduced word whose length is uniform on ``0..max_len``."""
    k = ctx.group.rank
    n = rng.randint(0, max_len)
    out: list = []
    while len(out) < n:
        x = rng.choice([1, -1]) * rng.randint(1, k)
        if out and out[-1] == -x:
            continue
        out.append(x)
    return tuple(out)


def random_index(rng, ctx: Context, allow_zero=True) -> int:
    lo = 0 if allow_zero else 1
    return rng.randint(lo, len(ctx.labels))


def random_coord(rng, ctx: Context, max_len: int):
    return (random_word(rng, ctx, max_len), random_index(rng, ctx))


SCALARS = [GaussQ(1), GaussQ(-1), GaussQ(2), GaussQ(Fraction(1, 2)), GaussQ(0, 1), GaussQ(1, -1)]


def random_boolfn(rng, ctx: Context, max_terms=3, max_factors=3, max_len=2, real=False) -> BoolFn:
    f = ctx.zero()
    pool = SCALARS[:4] if real else SCALARS
    for _ in range(rng.randint(1, max_terms)):
        coords = [random_coord(rng, ctx, max_len) for _ in range(rng.randint(0, max_factors))]
        f = f + monomial(ctx, coords, rng.choice(pool))
    return f


def random_cp(rng, ctx: Context, max_terms=2, max_len=2) -> CPElement:
    x = CPElement(ctx, {}, _trusted=True)
    for _ in range(rng.randint(1, max_terms)):
        g = random_word(rng, ctx, max_len)
        x = x + mono(random_boolfn(rng, ctx, 2, 2, max_len), g)
    return x


def random_product(rng, ctx: Context, max_factors=3, max_len=3) -> BoolFn:
    f = ctx.unit()
    for _ in range(rng.randint(0, max_factors)):
        g, i = random_coord(rng, ctx, max_len)
        f = f * char(ctx, g, i)
    return f


# -- suites -------------------------------------------------------------------


def _run(name, samples, check) -> SuiteResult:
    res = SuiteResult(name, samples)
    for k in range(samples):
        msg = check(k)
        if msg:
            res.failures.append(f"#{k}: {msg}")
    return res


def canonical_form(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``is_zero`` against raw evaluation over every consistent assignment of the support.

    Raw monomials are kept un-normalized so the oracle does not share code with
    the canonical form. A share of samples is built to cancel after absorption.
    """
    ctx = ctx or default_context()
    rng = random.Random(seed)
    e = ctx.group.identity

    def raw_sample():
        k = rng.randint(1, 4)
        terms = []
        for _ in range(k):
            coords = {random_coord(rng, ctx, 3) for _ in range(rng.randint(0, 3))}
            terms.append((coords, rng.choice([1, -1, 2])))
        if k > 1 and rng.random() < 0.5:
            # replace the last term by a disguised negative copy of an earlier one
            coords, c = rng.choice(terms[:-1])
            disguised = set(coords) | {(g, 0) for g, i in coords if i} | {(e, 0)}
            terms[-1] = (disguised, -c)
        return terms

    def check(_):
        terms = raw_sample()
        f = ctx.zero()
        for coords, c in terms:
            f = f + monomial(ctx, coords, c)
        support = set()
        for coords, _ in terms:
            support |= coords
        vanish = True
        for pt in _points_on(support, e):
            v = sum(c for coords, c in terms if coords <= pt)
            if v:
                vanish = False
                break
        if vanish != f.is_zero():
            return f"raw {terms} oracle={vanish} is_zero={f.is_zero()}"
        return None

    return _run("canonical-form", samples, check)


def _points_on(coords, e):
    """Every point supported on ``coords``: per group element, absent or present with any label subset."""
    groups: Dict = {}
    for g, i in coords:
        groups.setdefault(g, set())
        if i:
            groups[g].add(i)
    groups.setdefault(e, set())
    order = sorted(groups, key=lambda g: (len(g), g))
    out = [frozenset()]
    for g in order:
        labels = sorted(groups[g])
        options = [[(g, 0)] + [(g, l) for k, l in enumerate(labels) if bits >> k & 1]
                   for bits in range(1 << len(labels))]
        if g != e:
            options.append([])
        out = [pt | frozenset(o) for pt in out for o in options]
    return out


def lemma_translation(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``alpha(t, 1[t^-1] 1[r;i]) = 1[t] 1[tr;i]``."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group

    def check(_):
        t, r = random_word(rng, ctx, 3), random_word(rng, ctx, 3)
        i = random_index(rng, ctx)
        lhs = alpha(t, char(ctx, grp.inverse(t)) * char(ctx, r, i))
        rhs = char(ctx, t) * char(ctx, grp.multiply(t, r), i)
        return None if lhs == rhs else f"t={t} r={r} i={i}: {lhs} != {rhs}"

    return _run("lemma-translation", samples, check)


def composition(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``alpha(t, alpha(s, f)) = 1[t] alpha(ts, 1[s^-1] f)``."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group

    def check(_):
        t, s = random_word(rng, ctx, 2), random_word(rng, ctx, 2)
        f = random_boolfn(rng, ctx)
        lhs = alpha(t, alpha(s, f))
        rhs = char(ctx, t) * alpha(grp.multiply(t, s), char(ctx, grp.inverse(s)) * f)
        return None if lhs == rhs else f"t={t} s={s} f={f}"

    return _run("composition", samples, check)


def point_compatibility(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``alpha(t, f)(xi) = f(t^-1 xi)`` for ``t`` in ``xi`` and 0 otherwise; sup norm preserved on the domain."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group

    def check(_):
        t = random_word(rng, ctx, 2)
        f = random_boolfn(rng, ctx)
        coords = [random_coord(rng, ctx, 2) for _ in range(rng.randint(0, 6))]
        if rng.random() < 0.7:
            coords.append((t, 0))
        xi = FinitePoint.closure(ctx, coords)
        got = alpha(t, f).evaluate(xi)
        want = f.evaluate(translate_point(grp.inverse(t), xi)) if (t, 0) in xi else GaussQ(0)
        if got != want:
            return f"t={t} f={f} xi={xi}: {got} != {want}"
        g = char(ctx, grp.inverse(t)) * f
        if alpha(t, g).sup_norm() != g.sup_norm():
            return f"sup norm changed for t={t} f={g}"
        return None

    return _run("point-compatibility", samples, check)


def covariance(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``pi(t) embed(a) pi(t)^* = embed(alpha_t(a))`` for ``a`` restricted to ``1[t^-1]``."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group

    def check(_):
        t = random_word(rng, ctx, 3)
        a = char(ctx, grp.inverse(t)) * random_product(rng, ctx)
        p = pi(ctx, t)
        lhs = p * embed(a) * p.star()
        rhs = embed(alpha(t, a))
        return None if lhs == rhs else f"t={t} a={a}"

    return _run("covariance", samples, check)


def generator_chain(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``(1[t] d(e)) pi(r) P_i pi(r^-1) (1[t] d(t)) = 1[t] 1[r;i] d(t)``."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group

    def check(_):
        t, r = random_word(rng, ctx, 3), random_word(rng, ctx, 3)
        i = random_index(rng, ctx, allow_zero=False)
        lt = char(ctx, t)
        lhs = mono(lt, grp.identity) * pi(ctx, r) * proj(ctx, i) * pi(ctx, grp.inverse(r)) * mono(lt, t)
        rhs = mono(lt * char(ctx, r, i), t)
        return None if lhs == rhs else f"t={t} r={r} i={i}"

    return _run("generator-chain", samples, check)


def _expand(x: CPElement) -> list:
    return [mono(monomial(x.ctx, m, c), g) for g, a in x.coeffs.items() for m, c in a.terms.items()]


def associativity(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``(xy)z = x(yz)`` on monomial elements, each side summed monomial by monomial."""
    ctx = ctx or default_context()
    rng = random.Random(seed)

    def rand_mono():
        return mono(random_product(rng, ctx, 3, 2), random_word(rng, ctx, 2))

    def check(_):
        x, y, z = rand_mono(), rand_mono(), rand_mono()
        left = CPElement(ctx, {}, _trusted=True)
        for u in _expand(x * y):
            left = left + u * z
        right = CPElement(ctx, {}, _trusted=True)
        for v in _expand(y * z):
            right = right + x * v
        return None if left == right else f"x={x} y={y} z={z}"

    return _run("associativity", samples, check)


def involution(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``(xy)^* = y^* x^*``, ``(lam x)^* = conj(lam) x^*``, ``x^** = x``."""
    ctx = ctx or default_context()
    rng = random.Random(seed)

    def check(_):
        x, y = random_cp(rng, ctx), random_cp(rng, ctx)
        lam = rng.choice(SCALARS)
        if (x * y).star() != y.star() * x.star():
            return f"anti-multiplicative: x={x} y={y}"
        if x.scale(lam).star() != x.star().scale(lam.conj()):
            return f"conjugate-linear: x={x} lam={lam}"
        if x.star().star() != x:
            return f"involutive: x={x}"
        return None

    return _run("involution", samples, check)


def partial_representation(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """Partial-representation laws for ``pi`` and commutation of range projections."""
    ctx = ctx or default_context()
    rng = random.Random(seed)
    grp = ctx.group
    inv, mul = grp.inverse, grp.multiply
    if pi(ctx, grp.identity) != one(ctx):
        return SuiteResult("partial-representation", samples, ["pi(e) != 1"])

    def check(_):
        r, s = random_word(rng, ctx, 3), random_word(rng, ctx, 3)
        pr, ps = pi(ctx, r), pi(ctx, s)
        if pr.star() != pi(ctx, inv(r)):
            return f"pi(r)^* != pi(r^-1) for r={r}"
        if pr * ps * pi(ctx, inv(s)) != pi(ctx, mul(r, s)) * pi(ctx, inv(s)):
            return f"[r][s][s^-1] != [rs][s^-1] for r={r} s={s}"
        if pr.star() * pr * ps != pr.star() * pi(ctx, mul(r, s)):
            return f"[r]^*[r][s] != [r]^*[rs] for r={r} s={s}"
        i, j = random_index(rng, ctx, False), random_index(rng, ctx, False)
        p = pr * proj(ctx, i) * pr.star()
        q = ps * proj(ctx, j) * ps.star()
        ranges = [pr * pr.star(), ps * ps.star(), p, q]
        for u in ranges:
            for v in ranges:
                if u * v != v * u:
                    return f"range projections do not commute for r={r} s={s} i={i} j={j}"
        return None

    return _run("partial-representation", samples, check)


def norms(seed: int, samples: int, ctx: Optional[Context] = None) -> SuiteResult:
    """``||xy||_1 <= ||x||_1 ||y||_1`` and ``||x^*||_1 = ||x||_1`` on rational elements."""
    ctx = ctx or default_context()
    rng = random.Random(seed)

    def rand_real():
        x = CPElement(ctx, {}, _trusted=True)
        for _ in range(rng.randint(1, 2)):
            x = x + mono(random_boolfn(rng, ctx, 2, 2, 2, real=True), random_word(rng, ctx, 2))
        return x

    def check(_):
        x, y = rand_real(), rand_real()
        nx, ny, nxy = x.one_norm(), y.one_norm(), (x * y).one_norm()
        if nxy > nx * ny:
            return f"not submultiplicative: x={x} y={y}"
        if x.star().one_norm() != nx:
            return f"star changed the norm: x={x}"
        return None

    return _run("norms", samples, check)


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "canonical-form": canonical_form,
    "lemma-translation": lemma_translation,
    "composition": composition,
    "point-compatibility": point_compatibility,
    "covariance": covariance,
    "generator-chain": generator_chain,
    "associativity": associativity,
    "involution": involution,
    "partial-representation": partial_representation,
    "norms": norms,
}


def run_all(seed: int, samples: int, names=None) -> List[SuiteResult]:
    names = names or list(SUITES)
    return [SUITES[n](seed + k, samples) for k, n in enumerate(names)]
