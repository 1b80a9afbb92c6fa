"""Group arithmetic for free groups and finite groups given by a table.

Group elements are plain hashable values interpreted by their group:

* in a :class:`FreeGroup` an element is a reduced tuple of nonzero ints, letter
  ``k`` standing for generator ``k-1`` and ``-k`` for its inverse; ``()`` is e.
* in a :class:`FiniteGroup` an element is an index into the table.

Keeping elements raw keeps coordinate sets cheap to hash; the group object is
the authority on what a value means. ``check`` validates foreign values.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence, Tuple, Union

from .errors import EnumerationCapError, GroupError, ParseError

Word = Tuple[int, ...]
GroupElement = Union[Word, int]

DEFAULT_BALL_CAP = 1 << 20

_NAME_RE = re.compile(r"[^\s;\[\]\^\(\)\*\+,]+")
_LETTER_RE = re.compile(r"([^\s;\[\]\^\(\)\*\+,]+)(?:\^(-?1))?")


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not _NAME_RE.fullmatch(name) or name == "0":
        raise GroupError(f"illegal name {name!r}")


def reduce_letters(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence (stack based, so confluent by construction)."""
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class FreeGroup:
    """Free group on a finite alphabet of distinct names (rank 0 is the trivial group)."""

    kind = "free"

    def __init__(self, alphabet: Sequence[str]):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise GroupError(f"duplicate generator names in {alphabet}")
        for a in alphabet:
            _check_name(a)
        self.alphabet = alphabet
        self._index = {a: k + 1 for k, a in enumerate(alphabet)}

    identity: Word = ()

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.alphabet == self.alphabet

    def __hash__(self):
        return hash(("free", self.alphabet))

    def __repr__(self):
        return f"FreeGroup({list(self.alphabet)!r})"

    # -- elements -------------------------------------------------------
    def check(self, u) -> Word:
        if not isinstance(u, tuple):
            raise GroupError(f"{u!r} is not a free-group word")
        n = self.rank
        for k, x in enumerate(u):
            if not isinstance(x, int) or x == 0 or abs(x) > n:
                raise GroupError(f"letter {x!r} outside alphabet of rank {n}")
            if k and u[k - 1] == -x:
                raise GroupError(f"word {u!r} is not reduced")
        return u

    def gen(self, name: str) -> Word:
        try:
            return (self._index[name],)
        except KeyError:
            raise GroupError(f"unknown generator {name!r}") from None

    def gens(self) -> list:
        return [(k + 1,) for k in range(self.rank)]

    def from_letters(self, letters: Iterable[int]) -> Word:
        return reduce_letters(letters)

    def multiply(self, u: Word, v: Word) -> Word:
        if not u:
            return v
        if not v:
            return u
        # cancel at the seam only; both inputs are reduced
        i = 0
        n = min(len(u), len(v))
        while i < n and u[-1 - i] == -v[i]:
            i += 1
        return u[: len(u) - i] + v[i:]

    def inverse(self, u: Word) -> Word:
        return tuple(-x for x in reversed(u))

    def length(self, u: Word) -> int:
        return len(u)

    def is_length_additive(self, r: Word, s: Word) -> bool:
        return not r or not s or r[-1] != -s[0]

    def prefixes(self, u: Word) -> list:
        """All reduced prefixes of ``u``, from e up to ``u`` itself."""
        return [u[:k] for k in range(len(u) + 1)]

    def letter_key(self, x: int) -> int:
        return 2 * (abs(x) - 1) + (1 if x < 0 else 0)

    def sort_key(self, u: Word):
        return (len(u), tuple(2 * (abs(x) - 1) + (x < 0) for x in u))

    def ball_size(self, L: int) -> int:
        k = 2 * self.rank
        return 1 + sum(k * (k - 1) ** (l - 1) for l in range(1, L + 1))

    def sphere(self, L: int) -> list:
        return [w for w in self.ball(L) if len(w) == L]

    def ball(self, L: int, cap: int = DEFAULT_BALL_CAP) -> list:
        """All reduced words of length <= L in length-lexicographic order."""
        if L < 0:
            raise GroupError("ball radius must be >= 0")
        size = self.ball_size(L)
        if size > cap:
            raise EnumerationCapError(size, cap, "group elements")
        letters = sorted(
            [k for k in range(1, self.rank + 1)] + [-k for k in range(1, self.rank + 1)],
            key=self.letter_key,
        )
        out = [()]
        layer = [()]
        for _ in range(L):
            nxt = []
            for w in layer:
                for x in letters:
                    if w and w[-1] == -x:
                        continue
                    nxt.append(w + (x,))
            out.extend(nxt)
            layer = nxt
        return out

    # -- text -------------------------------------------------------------
    def format(self, u: Word) -> str:
        parts = []
        for x in u:
            name = self.alphabet[abs(x) - 1]
            parts.append(name if x > 0 else name + "^-1")
        return " ".join(parts)

    def parse(self, text: str) -> Word:
        """Parse whitespace-separated letters ``x`` / ``x^-1``; empty text is e."""
        letters = []
        for tok in text.split():
            m = _LETTER_RE.fullmatch(tok)
            if not m or m.group(1) not in self._index:
                raise ParseError(f"bad letter {tok!r} for alphabet {list(self.alphabet)}")
            k = self._index[m.group(1)]
            letters.append(-k if m.group(2) == "-1" else k)
        return reduce_letters(letters)

    def to_json(self) -> dict:
        return {"free": list(self.alphabet)}


class FiniteGroup:
    """Finite group given by its multiplication table; axioms checked by exhaustion."""

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupError("multiplication table must be a nonempty square")
        if any(not 0 <= x < n for row in table for x in row):
            raise GroupError("table entries out of range")
        ident = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if not ident:
            raise GroupError("table has no identity element")
        e = ident[0]
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if table[g][h] == e and table[h][g] == e]
            if not hs:
                raise GroupError(f"element {g} has no inverse")
            inv.append(hs[0])
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise GroupError(f"table is not associative at ({a}, {b}, {c})")
        if names is None:
            names = [f"g{k}" for k in range(n)]
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise GroupError("need one distinct name per element")
        for a in names:
            _check_name(a)
        self.table = table
        self.order = n
        self.identity = e
        self.inverses = tuple(inv)
        self.names = names
        self._index = {a: k for k, a in enumerate(names)}

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and other.table == self.table and other.names == self.names

    def __hash__(self):
        return hash(("finite", self.table))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def check(self, u) -> int:
        if not isinstance(u, int) or not 0 <= u < self.order:
            raise GroupError(f"{u!r} is not an element of a group of order {self.order}")
        return u

    def gen(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(f"unknown element {name!r}") from None

    def gens(self) -> list:
        return [g for g in range(self.order) if g != self.identity]

    def multiply(self, u: int, v: int) -> int:
        return self.table[u][v]

    def inverse(self, u: int) -> int:
        return self.inverses[u]

    def length(self, u):
        raise GroupError("word length is undefined in a finite group")

    def is_length_additive(self, r, s):
        raise GroupError("length additivity is undefined in a finite group")

    def sort_key(self, u: int):
        return (0 if u == self.identity else 1, u)

    def ball(self, L: int, cap: int = DEFAULT_BALL_CAP) -> list:
        if L < 0:
            raise GroupError("ball radius must be >= 0")
        if self.order > cap:
            raise EnumerationCapError(self.order, cap, "group elements")
        return sorted(range(self.order), key=self.sort_key)

    def format(self, u: int) -> str:
        return "" if u == self.identity else self.names[u]

    def parse(self, text: str) -> int:
        g = self.identity
        for tok in text.split():
            m = _LETTER_RE.fullmatch(tok)
            if not m or m.group(1) not in self._index:
                raise ParseError(f"bad element {tok!r}")
            x = self._index[m.group(1)]
            if m.group(2) == "-1":
                x = self.inverses[x]
            g = self.table[g][x]
        return g

    def to_json(self) -> dict:
        return {"finite": [list(r) for r in self.table], "names": list(self.names)}


GroupContext = Union[FreeGroup, FiniteGroup]


def group_from_json(obj) -> GroupContext:
    if "free" in obj:
        return FreeGroup(obj["free"])
    if "finite" in obj:
        return FiniteGroup(obj["finite"], obj.get("names"))
    raise ParseError("group must have a 'free' or 'finite' key")
