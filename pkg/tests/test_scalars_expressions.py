from fractions import Fraction

import pytest

from parcross import GaussQ, char, parse_boolfn, parse_cp, parse_point, pi, proj
from parcross.errors import ParseError
from parcross.expressions import infer_context
from parcross.scalars import format_scalar, parse_scalar


def test_scalar_arithmetic():
    x = GaussQ(1, 1)
    assert x * x.conj() == GaussQ(2)
    assert x.abs2() == 2
    assert GaussQ(Fraction(1, 2)) + GaussQ(Fraction(1, 2)) == GaussQ(1)
    assert not (x - x)


def test_scalar_text():
    for text in ["3/2", "-1", "1+1i", "0-2i", "-1/3+2/5i"]:
        assert parse_scalar(text) == parse_scalar(format_scalar(parse_scalar(text)))
    assert parse_scalar("1+1i") == GaussQ(1, 1)


def test_boolfn_roundtrip(ctx):
    for text in ["1[a]", "3/2*1[] + -1*1[b] + 1+1i*1[a]1[b;1]", "2", "1[a;1] - 1[b^-1 a;2]", "0"]:
        f = parse_boolfn(ctx, text)
        assert parse_boolfn(ctx, f.format()) == f


def test_boolfn_values(ctx, w):
    assert parse_boolfn(ctx, "1[a;1]1[a]") == char(ctx, w("a"), 1)
    assert parse_boolfn(ctx, "1[] ") == ctx.unit()
    assert parse_boolfn(ctx, "(1+1i)*1[a]") == char(ctx, w("a")).scale(GaussQ(1, 1))


def test_cp_roundtrip(ctx, w):
    x = pi(ctx, w("a")) + proj(ctx, 1).scale(2)
    assert parse_cp(ctx, x.format()) == x
    assert parse_cp(ctx, "(1[a] + 1[a]1[a b]) d(a)") == parse_cp(ctx, "1[a] d(a) + 1[a b] d(a)")
    assert parse_cp(ctx, "0").is_zero()


def test_parse_errors(ctx):
    for bad in ["", "1[c]", "2 1[a]", "1[a", "1[a;7]", "1[a] +"]:
        with pytest.raises(ParseError):
            parse_boolfn(ctx, bad)
    with pytest.raises(ParseError):
        parse_cp(ctx, "1[a]")


def test_parse_point(ctx):
    xi = parse_point(ctx, "a;1, b")
    assert xi.format() == "{e, a, a;1, b}"
    assert parse_point(ctx, "e;2").format() == "{e, e;2}"


def test_infer_context():
    c = infer_context(["1[b;x] d(a^-1)"])
    assert c.group.alphabet == ("a", "b")
    assert c.labels == ("x",)
