import random

import pytest

from parcross import FinitePoint, alpha, char, translate_point
from parcross.errors import GroupError
from parcross.partial_action import in_domain
from parcross.verify import composition, lemma_translation, point_compatibility, random_boolfn, random_word


def test_translate_examples(ctx, w):
    a, b = w("a"), w("b")
    xi = FinitePoint(ctx, [((), 0), (w("a^-1"), 0)])
    assert translate_point((), xi) == xi
    assert translate_point(a, xi) == FinitePoint(ctx, [(a, 0), ((), 0)])
    xi2 = FinitePoint(ctx, [((), 0), (w("a^-1"), 0), (w("a^-1 b"), 1), (w("a^-1 b"), 0)])
    assert translate_point(a, xi2) == FinitePoint(ctx, [(a, 0), ((), 0), (b, 1), (b, 0)])


def test_translate_requires_domain(ctx, w):
    with pytest.raises(GroupError):
        translate_point(w("a"), FinitePoint(ctx, [((), 0)]))


def test_translate_roundtrip(ctx, w):
    rng = random.Random(1)
    for _ in range(100):
        t = random_word(rng, ctx, 3)
        xi = FinitePoint.closure(ctx, [(ctx.group.inverse(t), 0), (random_word(rng, ctx, 2), 1)])
        eta = translate_point(t, xi)
        assert (t, 0) in eta
        assert translate_point(ctx.group.inverse(t), eta) == xi


def test_alpha_examples(ctx, w):
    a, ai = w("a"), w("a^-1")
    f = char(ctx, ai) * char(ctx, (), 1)
    assert alpha(a, f) == char(ctx, a) * char(ctx, a, 1)
    g = random_boolfn(random.Random(2), ctx)
    assert alpha((), g) == g
    h = char(ctx, a) * g
    assert alpha(a, alpha(ai, h)) == h


def test_alpha_result_restricted(ctx):
    rng = random.Random(3)
    for _ in range(200):
        t = random_word(rng, ctx, 3)
        f = random_boolfn(rng, ctx)
        r = alpha(t, f)
        assert r == char(ctx, t) * r
        assert in_domain(ctx.group.inverse(t), r)


@pytest.mark.parametrize("suite", [lemma_translation, composition, point_compatibility])
def test_suites(suite):
    r = suite(5, 300)
    assert r.passed, r.failures[:3]
