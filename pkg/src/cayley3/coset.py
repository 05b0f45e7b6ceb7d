"""Todd-Coxeter coset enumeration over the trivial subgroup (HLT strategy).

When enumeration completes, the compacted coset table is the right regular
representation of the group: coset ``c`` times generator column ``x`` is
``table[c][x]``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

DEFAULT_COSET_LIMIT = 10**6
ENV_LIMIT = "CAYLEY3_COSET_LIMIT"


def default_limit() -> int:
    value = os.environ.get(ENV_LIMIT)
    return int(value) if value else DEFAULT_COSET_LIMIT


def column(letter: int) -> int:
    """Column of a signed letter: generator i -> 2i, its inverse -> 2i+1."""
    return 2 * (abs(letter) - 1) + (letter < 0)


@dataclass(frozen=True)
class CosetTable:
    complete: bool
    table: tuple[tuple[int, ...], ...]  # empty when incomplete
    defined: int  # total cosets ever defined

    @property
    def order(self) -> int:
        return len(self.table)


class _Enumerator:
    def __init__(self, ngens: int, relators: Sequence[Sequence[int]], limit: int) -> None:
        self.ncols = 2 * ngens
        self.rels = [[column(x) for x in r] for r in relators]
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise _LimitReached
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][self.inv(x)] = c

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = self.table[g][x]
                if d is None:
                    continue
                xi = self.inv(x)
                if self.table[d][xi] == g:
                    self.table[d][xi] = None
                mu, nu = self.find(g), self.find(d)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][xi] is not None:
                    self._merge(mu, self.table[nu][xi], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][xi] = mu

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][self.inv(word[j])] is not None:
                b = table[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def run(self) -> None:
        c = 0
        while c < len(self.table):
            if self.live(c):
                for rel in self.rels:
                    if not self.live(c):
                        break
                    self.scan_and_fill(c, rel)
                if self.live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1

    def compact(self) -> tuple[tuple[int, ...], ...]:
        # renumber live cosets in breadth-first order from coset 0
        order = {0: 0}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.find(self.table[c][x])
                if d not in order:
                    order[d] = len(order)
                    queue.append(d)
        rows = [None] * len(order)
        for c, new in order.items():
            rows[new] = tuple(order[self.find(self.table[c][x])] for x in range(self.ncols))
        return tuple(rows)


class _LimitReached(Exception):
    pass


def enumerate_cosets(ngens: int, relators: Sequence[Sequence[int]], limit: int | None = None) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup of ``<gens | relators>``.

    Returns an incomplete table (``complete=False``) when more than ``limit``
    cosets would have to be defined.
    """
    limit = default_limit() if limit is None else limit
    if ngens == 0:
        return CosetTable(True, ((),), 1)
    en = _Enumerator(ngens, relators, limit)
    try:
        en.run()
    except _LimitReached:
        return CosetTable(False, (), len(en.table))
    return CosetTable(True, en.compact(), len(en.table))
