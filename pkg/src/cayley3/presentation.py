"""Finite presentations and the ``.grp`` text format.

A word is a tuple of nonzero integers: generator ``i`` (0-based) is written
``i + 1`` and its inverse ``-(i + 1)``.  The grammar is documented in
``docs/presentation-format.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, UnknownGenerator

Word = tuple[int, ...]


def letter_index(letter: int) -> int:
    return abs(letter) - 1


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i : j + 1])


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    # optional concrete realisations carried by a .grp file
    permutations: dict = field(default_factory=dict, compare=False, hash=False)
    matrices: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise ParseError("duplicate generator names")
        n = len(self.generators)
        for rel in self.relators:
            if not rel:
                raise ParseError("empty relator")
            for x in rel:
                if x == 0 or abs(x) > n:
                    raise UnknownGenerator(f"letter {x} out of range in relator {rel}")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        """Parse a single word such as ``"a b^-1 (a b)^2"``."""
        if not text.strip():
            return ()
        return _WordParser(text, self.generators).parse_relator()

    def format_word(self, word: Sequence[int]) -> str:
        parts = []
        for x in word:
            name = self.generators[letter_index(x)]
            parts.append(name if x > 0 else f"{name}^-1")
        return " ".join(parts)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        if self.relators:
            lines.append("rels: " + "; ".join(self.format_word(r) for r in self.relators))
        return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],^*=]))")


class _WordParser:
    def __init__(self, text: str, generators: Sequence[str]) -> None:
        self.text = text
        self.gens = list(generators)
        self.index = {g: i for i, g in enumerate(generators)}
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, str]]:
        out = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r} in {text!r}")
            kind = m.lastgroup
            out.append((kind, m.group(kind)))
            i = m.end()
        return out

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self, value=None):
        tok = self._peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def _split_ident(self, ident: str) -> list[int]:
        # greedy longest match so multi-letter generator names work
        letters = []
        i = 0
        names = sorted(self.gens, key=len, reverse=True)
        while i < len(ident):
            for name in names:
                if ident.startswith(name, i):
                    letters.append(self.index[name] + 1)
                    i += len(name)
                    break
            else:
                raise UnknownGenerator(f"unknown generator in {ident!r}")
        return letters

    def parse_relator(self) -> Word:
        lhs = self._product()
        if self._peek()[1] == "=":
            self._take("=")
            rhs = self._product()
            lhs = lhs + invert_word(rhs)
        if self._peek()[0] is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return tuple(lhs)

    def _product(self) -> Word:
        out: list[int] = []
        while True:
            kind, val = self._peek()
            if val == "*":
                self._take()
                continue
            if kind == "ident" or val in ("(", "["):
                out.extend(self._factor())
            elif kind == "int" and val == "1":
                self._take()  # the identity
            else:
                return tuple(out)

    def _factor(self) -> Word:
        kind, val = self._peek()
        if kind == "ident":
            self._take()
            letters = self._split_ident(val)
            # a power binds to the last generator only: "ab^2" is a b b
            base, prefix = (letters[-1],), tuple(letters[:-1])
        elif val == "(":
            self._take("(")
            base, prefix = self._product(), ()
            self._take(")")
        elif val == "[":
            self._take("[")
            x = self._product()
            self._take(",")
            y = self._product()
            self._take("]")
            base, prefix = invert_word(x) + invert_word(y) + x + y, ()
        else:
            raise ParseError(f"unexpected token {val!r} in {self.text!r}")
        if self._peek()[1] == "^":
            self._take("^")
            kind, val = self._take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            k = int(val)
            base = base * k if k >= 0 else invert_word(base) * (-k)
        return prefix + tuple(base)


def _split_depth0(text: str, seps: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in seps:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def split_relators(text: str) -> list[str]:
    """Split a ``rels:`` payload into relator strings.

    ``;`` or ``,`` at bracket depth 0 separate relators when present.
    Otherwise a line containing ``=`` is one relation, and any other line is
    split on whitespace at depth 0.
    """
    depth = 0
    has_sep = False
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and ch in ";,":
            has_sep = True
    if has_sep:
        return _split_depth0(text, ";,")
    if "=" in text:
        # a relation "lhs = rhs" spans the whole line
        return [text.strip()] if text.strip() else []
    # whitespace mode: keep "^ 2" glued
    glued = re.sub(r"\s*([\^*])\s*", r"\1", text)
    return _split_depth0(glued, " \t")


def _parse_perm(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("("):
        cycles = [list(map(int, c.replace(",", " ").split())) for c in re.findall(r"\(([^()]*)\)", text)]
        n = max((max(c) for c in cycles if c), default=-1) + 1
        img = list(range(n))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return tuple(img)
    return tuple(int(x) for x in text.strip("[]").replace(",", " ").split())


def _parse_matrix(text: str) -> tuple[tuple[Fraction, ...], ...]:
    rows = re.findall(r"\[([^\[\]]*)\]", text)
    if not rows:
        raise ParseError(f"bad matrix {text!r}")
    mat = tuple(tuple(Fraction(x.strip()) for x in row.split(",")) for row in rows)
    if any(len(r) != len(mat) for r in mat):
        raise ParseError(f"matrix must be square: {text!r}")
    return mat


def parse_presentation(text: str) -> Presentation:
    """Parse the ``.grp`` format into a :class:`Presentation`."""
    gens: list[str] | None = None
    rel_texts: list[str] = []
    perm_lines: list[tuple[str, str]] = []
    mat_lines: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"missing ':' in line {raw!r}")
        if key == "gens":
            if gens is not None:
                raise ParseError("gens given twice")
            gens = rest.split()
        elif key == "rels":
            rel_texts.extend(split_relators(rest))
        elif key.startswith("perm "):
            perm_lines.append((key[5:].strip(), rest))
        elif key.startswith("mat "):
            mat_lines.append((key[4:].strip(), rest))
        else:
            raise ParseError(f"unknown key {key!r}")
    if not gens:
        raise ParseError("no generators declared")
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
            raise ParseError(f"bad generator name {g!r}")
    relators = []
    for rt in rel_texts:
        w = _WordParser(rt, gens).parse_relator()
        if not w:
            raise ParseError(f"empty relator {rt!r}")
        relators.append(w)
    perms = {}
    for name, body in perm_lines:
        if name not in gens:
            raise UnknownGenerator(f"perm for unknown generator {name!r}")
        perms[name] = _parse_perm(body)
    mats = {}
    for name, body in mat_lines:
        if name not in gens:
            raise UnknownGenerator(f"matrix for unknown generator {name!r}")
        mats[name] = _parse_matrix(body)
    return Presentation(tuple(gens), tuple(relators), perms, mats)
