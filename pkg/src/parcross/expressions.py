"""Text syntax for functions, crossed-product elements and points.

::

    boolfn := term (('+' | '-') term)*
    term   := [scalar '*'] factor+ | scalar
    factor := '1[' word (';' index)? ']'          (omitted index means 0)
    scalar := rational [('+'|'-') rational 'i']   (optionally parenthesized)
    cp     := cpterm (('+' | '-') cpterm)*
    cpterm := (term | '(' boolfn ')') 'd(' word ')'
    point  := coord (',' coord)*                  coord := word [';' index]

Words are whitespace-separated letters ``x`` or ``x^-1``; the empty word is e.
"""
from __future__ import annotations

import re

from .coordinate_algebra import BoolFn, Context, FinitePoint, char
from .crossed_product import CPElement, mono, zero
from .errors import ParseError
from .scalars import SCALAR_RE, GaussQ, parse_scalar

_FACTOR_START = re.compile(r"1\s*\[")
_WS = re.compile(r"\s*")


class _Parser:
    def __init__(self, ctx: Context, text: str):
        self.ctx = ctx
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(f"{msg} at offset {self.pos} in {self.text!r}")

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def until(self, stops):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        return self.text[start : self.pos]

    def scalar(self):
        self.skip()
        if self.peek("("):
            save = self.pos
            self.pos += 1
            self.skip()
            m = SCALAR_RE.match(self.text, self.pos)
            if m:
                self.pos = m.end()
                if self.peek(")"):
                    self.pos += 1
                    return _scalar_from(m)
            self.pos = save
            return None
        m = SCALAR_RE.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return _scalar_from(m)

    def factor(self):
        self.skip()
        m = _FACTOR_START.match(self.text, self.pos)
        if not m:
            self.error("expected factor '1[...]'")
        self.pos = m.end()
        word_text = self.until(";]")
        try:
            g = self.ctx.group.parse(word_text)
        except ParseError as exc:
            self.error(str(exc))
        idx = 0
        if self.peek(";"):
            self.pos += 1
            label = self.until("]").strip()
            try:
                idx = self.ctx.index(label)
            except ValueError as exc:
                self.error(str(exc))
        self.eat("]")
        return char(self.ctx, g, idx)

    def term(self):
        self.skip()
        coeff = GaussQ(1)
        if not _FACTOR_START.match(self.text, self.pos):
            save = self.pos
            lam = self.scalar()
            if lam is None:
                self.error("expected a term")
            if self.peek("*"):
                self.pos += 1
                coeff = lam
            else:
                self.skip()
                if _FACTOR_START.match(self.text, self.pos):
                    self.pos = save
                    self.error("missing '*' between scalar and factor")
                return self.ctx.unit().scale(lam)
        f = self.factor()
        while True:
            self.skip()
            if _FACTOR_START.match(self.text, self.pos):
                f = f * self.factor()
            else:
                break
        return f.scale(coeff)

    def sign(self):
        if self.peek("+"):
            self.pos += 1
            return 1
        if self.peek("-"):
            self.pos += 1
            return -1
        return 0

    def boolfn(self, stop=None):
        total = self.ctx.zero()
        sgn = 1
        if self.peek("-"):
            self.pos += 1
            sgn = -1
        while True:
            t = self.term()
            total = total + (t if sgn > 0 else -t)
            if stop is not None and self.peek(stop):
                return total
            sgn = self.sign()
            if sgn == 0:
                return total

    def cpterm(self):
        self.skip()
        if self._paren_boolfn():
            self.eat("(")
            f = self.boolfn(stop=")")
            self.eat(")")
        else:
            f = self.term()
        self.eat("d(")
        word_text = self.until(")")
        try:
            g = self.ctx.group.parse(word_text)
        except ParseError as exc:
            self.error(str(exc))
        self.eat(")")
        return mono(f, g)

    def _paren_boolfn(self):
        """A '(' that opens a parenthesized function rather than a scalar."""
        if not self.peek("("):
            return False
        save = self.pos
        lam = self.scalar()
        self.pos = save
        return lam is None

    def cp(self):
        total = zero(self.ctx)
        sgn = 1
        if self.peek("-"):
            self.pos += 1
            sgn = -1
        while True:
            t = self.cpterm()
            total = total + (t if sgn > 0 else -t)
            sgn = self.sign()
            if sgn == 0:
                return total


def _scalar_from(m) -> GaussQ:
    return parse_scalar(m.group(0))


def parse_boolfn(ctx: Context, text: str) -> BoolFn:
    p = _Parser(ctx, text)
    if p.at_end():
        raise ParseError("empty expression")
    if p.text.strip() == "0":
        return ctx.zero()
    f = p.boolfn()
    if not p.at_end():
        p.error("trailing input")
    return f


def parse_cp(ctx: Context, text: str) -> CPElement:
    p = _Parser(ctx, text)
    if p.text.strip() == "0":
        return zero(ctx)
    x = p.cp()
    if not p.at_end():
        p.error("trailing input")
    return x


def parse_point(ctx: Context, text: str) -> FinitePoint:
    """Comma-separated coordinates; the result is closed (``e`` and parents added)."""
    coords = []
    for item in text.split(","):
        item = item.strip()
        if not item or item == "e":
            continue
        word, _, label = item.partition(";")
        word = "" if word.strip() == "e" else word
        coords.append((ctx.group.parse(word), ctx.index(label.strip() or "0")))
    return FinitePoint.closure(ctx, coords)


def infer_context(texts, labels=None, gens=None) -> Context:
    """Build a free-group context from the names used in expression texts."""
    from .group_words import FreeGroup

    names, idx = [], []
    for text in texts:
        for body in re.findall(r"1\s*\[([^\]]*)\]|d\(([^)]*)\)", text):
            body = body[0] or body[1]
            word, _, label = body.partition(";")
            for tok in word.split():
                n = tok.split("^")[0]
                if n not in names:
                    names.append(n)
            label = label.strip()
            if label and label != "0" and label not in idx:
                idx.append(label)
    if gens is None:
        if not names:
            names = ["a"]
        gens = sorted(names)
    if labels is None:
        labels = sorted(idx)
    return Context(FreeGroup(gens), tuple(labels))
