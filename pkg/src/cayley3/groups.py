"""Group-element oracles.

Every model exposes the same small surface (``identity``, ``generator``,
``mul``, ``inv``, ``evaluate``, ``enumerate``, ``ball``) so that the Cayley
builders never care how the group is represented.  Handles are dense ints
for the finite kinds and exact matrices (tuples of ``Fraction``) for the
matrix kind.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .coset import CosetTable, column, enumerate_cosets
from .errors import InconclusiveEnumeration, InfiniteOrUnknown, NotGenerating, UnknownGenerator
from .presentation import Presentation, Word

Handle = Hashable

# enumeration cap for kinds that cannot certify finiteness up front
DEFAULT_ELEMENT_LIMIT = 100_000


class GroupModel:
    kind: str = "abstract"
    generators: tuple[str, ...] = ()

    @property
    def identity(self) -> Handle:
        raise NotImplementedError

    def generator(self, i: int) -> Handle:
        raise NotImplementedError

    def mul(self, x: Handle, y: Handle) -> Handle:
        raise NotImplementedError

    def inv(self, x: Handle) -> Handle:
        raise NotImplementedError

    def letter(self, letter: int) -> Handle:
        i = abs(letter) - 1
        if letter == 0 or i >= len(self.generators):
            raise UnknownGenerator(f"letter {letter} out of range")
        g = self.generator(i)
        return g if letter > 0 else self.inv(g)

    def evaluate(self, word: Iterable[int]) -> Handle:
        x = self.identity
        for letter in word:
            x = self.mul(x, self.letter(letter))
        return x

    def enumerate(self) -> list[Handle]:
        raise NotImplementedError

    @property
    def order(self) -> int:
        return len(self.enumerate())

    def element_order(self, x: Handle, bound: int = 10**6) -> int:
        y, k = x, 1
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
            if k > bound:
                raise InfiniteOrUnknown("element order exceeds bound")
        return k

    def ball(self, gens: Sequence[int] | None = None, radius: int = 0) -> list[Handle]:
        """Elements of word length <= radius over ``gens`` and their inverses.

        ``gens`` are generator indices (default: all).  The result is in
        breadth-first order, without repetition.
        """
        gens = range(len(self.generators)) if gens is None else list(gens)
        if not gens:
            raise ValueError("ball needs at least one generator")
        steps = []
        for i in gens:
            g = self.generator(i)
            steps.extend([g, self.inv(g)])
        seen = {self.identity: 0}
        frontier = [self.identity]
        for r in range(radius):
            nxt = []
            for x in frontier:
                for s in steps:
                    y = self.mul(x, s)
                    if y not in seen:
                        seen[y] = r + 1
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        return list(seen)

    def word_for(self, x: Handle) -> Word:
        """A shortest word (over all generators) evaluating to ``x``; finite models only."""
        return self._words[x]

    @cached_property
    def _words(self) -> dict:
        words = {self.identity: ()}
        queue = deque([self.identity])
        letters = [s * (i + 1) for i in range(len(self.generators)) for s in (1, -1)]
        while queue:
            x = queue.popleft()
            for a in letters:
                y = self.mul(x, self.letter(a))
                if y not in words:
                    words[y] = words[x] + (a,)
                    queue.append(y)
        return words

    def is_finite(self) -> bool:
        return True


class _DenseGroup(GroupModel):
    """Finite group given by its right-regular permutation table."""

    def __init__(self, generators: Sequence[str], right_table: Sequence[Sequence[int]]) -> None:
        # right_table[x][2i] = x * g_i, right_table[x][2i+1] = x * g_i^-1
        self.generators = tuple(generators)
        self._right = tuple(tuple(r) for r in right_table)
        self._n = len(self._right)

    @property
    def identity(self) -> int:
        return 0

    def generator(self, i: int) -> int:
        return self._right[0][2 * i]

    def letter(self, letter: int) -> int:
        if letter == 0 or abs(letter) > len(self.generators):
            raise UnknownGenerator(f"letter {letter} out of range")
        return self._right[0][column(letter)]

    def evaluate(self, word: Iterable[int]) -> int:
        x = 0
        for letter in word:
            if letter == 0 or abs(letter) > len(self.generators):
                raise UnknownGenerator(f"letter {letter} out of range")
            x = self._right[x][column(letter)]
        return x

    def mul(self, x: int, y: int) -> int:
        for letter in self._words[y]:
            x = self._right[x][column(letter)]
        return x

    def inv(self, x: int) -> int:
        return self.evaluate(tuple(-a for a in reversed(self._words[x])))

    def enumerate(self) -> list[int]:
        return list(range(self._n))

    @property
    def order(self) -> int:
        return self._n

    @cached_property
    def _words(self) -> dict:
        words = {0: ()}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for col, y in enumerate(self._right[x]):
                if y not in words:
                    letter = (col // 2 + 1) * (-1 if col % 2 else 1)
                    words[y] = words[x] + (letter,)
                    queue.append(y)
        if len(words) != self._n:
            raise NotGenerating("generators do not generate the whole table")
        return words


class CosetGroup(_DenseGroup):
    """Finitely presented group, resolved by coset enumeration."""

    kind = "coset"

    def __init__(self, presentation: Presentation, limit: int | None = None) -> None:
        self.presentation = presentation
        self.result: CosetTable = enumerate_cosets(presentation.rank, presentation.relators, limit)
        self.generators = presentation.generators
        if self.result.complete:
            super().__init__(presentation.generators, self.result.table)
        else:
            self._right = ()
            self._n = None

    @property
    def complete(self) -> bool:
        return self.result.complete

    def _require(self) -> None:
        if not self.result.complete:
            raise InconclusiveEnumeration(
                f"coset enumeration aborted after {self.result.defined} cosets"
            )

    def generator(self, i: int) -> int:
        self._require()
        return super().generator(i)

    def letter(self, letter: int) -> int:
        self._require()
        return super().letter(letter)

    def evaluate(self, word: Iterable[int]) -> int:
        self._require()
        return super().evaluate(word)

    def enumerate(self) -> list[int]:
        self._require()
        return super().enumerate()

    @property
    def order(self) -> int:
        self._require()
        return self._n


class TableGroup(_DenseGroup):
    """Finite group from a full multiplication table ``table[x][y] = x*y``.

    Element 0 must be the identity; ``generators`` maps names to elements.
    """

    kind = "table"

    def __init__(self, table: Sequence[Sequence[int]], generators: dict[str, int]) -> None:
        n = len(table)
        if any(table[0][x] != x or table[x][0] != x for x in range(n)):
            raise ValueError("element 0 must be the identity")
        self.mtable = tuple(tuple(r) for r in table)
        gens = list(generators.items())
        inv = [next(y for y in range(n) if table[x][y] == 0) for x in range(n)]
        right = [[c for _, g in gens for c in (table[x][g], table[x][inv[g]])] for x in range(n)]
        super().__init__([name for name, _ in gens], right)
        self._inverse = inv
        self._words  # certifies generation

    def mul(self, x: int, y: int) -> int:
        return self.mtable[x][y]

    def inv(self, x: int) -> int:
        return self._inverse[x]


class PermutationGroup(_DenseGroup):
    """Group generated by permutations of ``range(degree)``.

    Element ids are assigned in breadth-first order from the identity.
    """

    kind = "permutation"

    def __init__(self, generators: dict[str, Sequence[int]], limit: int = DEFAULT_ELEMENT_LIMIT) -> None:
        names = list(generators)
        perms = [tuple(p) for p in generators.values()]
        degree = max((len(p) for p in perms), default=0)
        perms = [p + tuple(range(len(p), degree)) for p in perms]
        for p in perms:
            if sorted(p) != list(range(degree)):
                raise ValueError(f"not a permutation: {p}")
        inverses = [tuple(sorted(range(degree), key=lambda i, p=p: p[i])) for p in perms]
        ident = tuple(range(degree))
        index = {ident: 0}
        elems = [ident]
        right: list[list[int]] = []
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            row = []
            for p, q in zip(perms, inverses):
                for s in (p, q):
                    # x*s means apply x first, then s
                    y = tuple(s[x[i]] for i in range(degree))
                    if y not in index:
                        if len(index) >= limit:
                            raise InfiniteOrUnknown("permutation group larger than limit")
                        index[y] = len(elems)
                        elems.append(y)
                        queue.append(y)
                    row.append(index[y])
            right.append(row)
        self.degree = degree
        self.elements = elems
        self._index = index
        super().__init__(names, right)

    def perm(self, x: int) -> tuple[int, ...]:
        return self.elements[x]

    def mul(self, x: int, y: int) -> int:
        px, py = self.elements[x], self.elements[y]
        return self._index[tuple(py[px[i]] for i in range(self.degree))]

    def inv(self, x: int) -> int:
        p = self.elements[x]
        q = [0] * self.degree
        for i, j in enumerate(p):
            q[j] = i
        return self._index[tuple(q)]


Matrix = tuple[tuple[Fraction, ...], ...]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)) for i in range(n))


def _mat_inv(a: Matrix) -> Matrix:
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


class MatrixGroup(GroupModel):
    """Group generated by invertible rational matrices, compared exactly."""

    kind = "matrix"

    def __init__(self, generators: dict[str, Sequence[Sequence]], element_limit: int = DEFAULT_ELEMENT_LIMIT) -> None:
        self.generators = tuple(generators)
        self._gens = [as_matrix(m) for m in generators.values()]
        dims = {len(m) for m in self._gens}
        if len(dims) > 1:
            raise ValueError("generator matrices differ in size")
        self.dim = dims.pop() if dims else 1
        self._invs = [_mat_inv(m) for m in self._gens]
        self.element_limit = element_limit

    @property
    def identity(self) -> Matrix:
        return as_matrix([[int(i == j) for j in range(self.dim)] for i in range(self.dim)])

    def generator(self, i: int) -> Matrix:
        return self._gens[i]

    def letter(self, letter: int) -> Matrix:
        i = abs(letter) - 1
        if letter == 0 or i >= len(self._gens):
            raise UnknownGenerator(f"letter {letter} out of range")
        return self._gens[i] if letter > 0 else self._invs[i]

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        return _mat_mul(x, y)

    def inv(self, x: Matrix) -> Matrix:
        return _mat_inv(x)

    def enumerate(self) -> list[Matrix]:
        if self._has_infinite_generator():
            raise InfiniteOrUnknown("a generator has infinite order")
        seen = {self.identity}
        order = [self.identity]
        queue = deque(order)
        steps = self._gens + self._invs
        while queue:
            x = queue.popleft()
            for s in steps:
                y = _mat_mul(x, s)
                if y not in seen:
                    if len(seen) >= self.element_limit:
                        raise InfiniteOrUnknown(
                            f"more than {self.element_limit} elements; group infinite or too large"
                        )
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    def _has_infinite_generator(self) -> bool:
        # a unipotent matrix other than I, or one with |det| != 1, has infinite order
        ident = self.identity
        for g in self._gens:
            if g == ident:
                continue
            if abs(_det(g)) != 1:
                return True
            n = tuple(tuple(g[i][j] - ident[i][j] for j in range(self.dim)) for i in range(self.dim))
            p = n
            for _ in range(self.dim - 1):
                p = _mat_mul(p, n)
            if all(v == 0 for row in p for v in row):
                return True
        return False

    def is_finite(self) -> bool:
        if self._has_infinite_generator():
            return False
        try:
            self.enumerate()
        except InfiniteOrUnknown:
            return False
        return True


def _det(m: Matrix) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def translation_group(dim: int) -> MatrixGroup:
    """Z^dim as affine translation matrices, generators x, y, z, ... ."""
    names = "xyzwuv"[:dim] if dim <= 6 else [f"t{i}" for i in range(dim)]
    gens = {}
    for k, name in enumerate(names):
        m = [[int(i == j) for j in range(dim + 1)] for i in range(dim + 1)]
        m[k][dim] = 1
        gens[name] = m
    return MatrixGroup(gens)


def translation_vector(x: Matrix) -> tuple[int, ...]:
    dim = len(x) - 1
    return tuple(int(x[i][dim]) for i in range(dim))


def model_from_presentation(p: Presentation, kind: str = "coset", limit: int | None = None) -> GroupModel:
    """Build a model for ``p``; ``kind`` is one of coset, permutation, matrix."""
    if kind == "coset":
        return CosetGroup(p, limit)
    if kind == "permutation":
        missing = [g for g in p.generators if g not in p.permutations]
        if missing:
            raise UnknownGenerator(f"no permutation given for {missing}")
        return PermutationGroup({g: p.permutations[g] for g in p.generators})
    if kind == "matrix":
        missing = [g for g in p.generators if g not in p.matrices]
        if missing:
            raise UnknownGenerator(f"no matrix given for {missing}")
        return MatrixGroup({g: p.matrices[g] for g in p.generators})
    raise ValueError(f"unknown model kind {kind!r}")


def check_relators(model: GroupModel, relators: Iterable[Word]) -> list[Word]:
    """Relators that do not evaluate to the identity in ``model``."""
    return [r for r in relators if model.evaluate(r) != model.identity]
