from fractions import Fraction

import pytest

from parcross import CPElement, GaussQ, char, embed, mono, one, pi, proj, word_image, zero
from parcross.crossed_product import SurdSum, norm_value
from parcross.errors import GroupError
from parcross.verify import associativity, covariance, generator_chain, involution, norms, partial_representation


def test_mono_examples(ctx, w):
    a, b = w("a"), w("b")
    assert mono(ctx.unit(), ()) == one(ctx)
    assert mono(char(ctx, a), a) == pi(ctx, a)
    x = mono(char(ctx, b), a)
    assert x.coeff(a) == char(ctx, a) * char(ctx, b)
    assert mono(ctx.zero(), a).is_zero()


def test_product_examples(ctx, w):
    a = w("a")
    assert pi(ctx, a) * pi(ctx, w("a^-1")) == mono(char(ctx, a), ())
    x = pi(ctx, w("a b")) + proj(ctx, 2)
    assert x * one(ctx) == x == one(ctx) * x
    for t in ctx.group.ball(2):
        for r in ctx.group.ball(1):
            lt = char(ctx, t)
            chain = mono(lt, ()) * pi(ctx, r) * proj(ctx, 1) * pi(ctx, ctx.group.inverse(r)) * mono(lt, t)
            assert chain == mono(lt * char(ctx, r, 1), t)


def test_star_examples(ctx, w):
    assert pi(ctx, w("a")).star() == pi(ctx, w("a^-1"))
    assert one(ctx).star() == one(ctx)
    x = mono(char(ctx, w("b")).scale(GaussQ(1, 2)), w("a")) + proj(ctx, 1)
    assert x.star().star() == x


def test_norm_examples(ctx, w):
    assert pi(ctx, w("a")).one_norm() == 1
    assert zero(ctx).one_norm() == 0
    assert (pi(ctx, w("a")) + pi(ctx, w("b"))).one_norm() == 2
    n = (pi(ctx, w("a")).scale(GaussQ(1, 1)) + pi(ctx, w("b"))).one_norm()
    assert isinstance(n, SurdSum)
    assert norm_value(n) == pytest.approx(1 + 2 ** 0.5)
    assert (pi(ctx, w("a")).scale(Fraction(3, 2))).one_norm() == Fraction(3, 2)


def test_generator_images(ctx, w):
    assert pi(ctx, ()) == one(ctx)
    assert proj(ctx, 1) * proj(ctx, 1) == proj(ctx, 1)
    assert proj(ctx, "2") == embed(char(ctx, (), 2))
    with pytest.raises(GroupError):
        proj(ctx, 0)
    t, r = w("a"), w("b")
    a = char(ctx, w("a^-1")) * char(ctx, r, 1)
    from parcross import alpha

    assert pi(ctx, t) * embed(a) * pi(ctx, t).star() == embed(alpha(t, a))


def test_word_image(ctx, w):
    assert word_image(ctx, "a b") == pi(ctx, w("a")) * pi(ctx, w("b"))
    assert word_image(ctx, "") == one(ctx)
    x = word_image(ctx, "a a^-1")
    assert x == embed(char(ctx, w("a"))) != one(ctx)
    assert word_image(ctx, [1, 2]) == word_image(ctx, "a b")


def test_invariant_restriction(ctx, w):
    x = CPElement(ctx, {w("a"): char(ctx, w("b")) + char(ctx, w("a"))})
    for g, c in x.coeffs.items():
        assert c == char(ctx, g) * c
    y = CPElement(ctx, {w("a"): char(ctx, w("a")) - char(ctx, w("a"))})
    assert y.is_zero()


@pytest.mark.parametrize("suite,n", [(associativity, 200), (involution, 200), (partial_representation, 200),
                                     (covariance, 200), (generator_chain, 200), (norms, 100)])
def test_suites(suite, n):
    r = suite(3, n)
    assert r.passed, r.failures[:3]
