"""Slice patterns on an n-gon.

Boundary points are positions on the circle [0, n): vertex v_i sits at i
and the edge v_i v_{i+1} covers (i, i+1).  Arcs are chords given by their
two endpoints; two chords are disjoint iff their endpoints do not
interleave and they share no endpoint (E-arcs may share vertex endpoints,
since consecutive E-arcs end at the same vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import NotAnAutomorphism, NotAnInvolution

Chord = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Dihedral:
    """x -> k + x (rotation) or x -> k - x (reflection), modulo n."""

    n: int
    k: int
    reflection: bool

    def __call__(self, x):
        y = self.k - x if self.reflection else self.k + x
        return y % self.n

    def chord(self, c: Chord) -> Chord:
        return _norm((self(c[0]), self(c[1])))

    def is_involution(self) -> bool:
        return self.reflection or (2 * self.k) % self.n == 0

    @classmethod
    def from_vertex_map(cls, perm: Sequence[int]) -> "Dihedral":
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise NotAnAutomorphism("not a permutation of the vertices")
        for reflection in (False, True):
            h = cls(n, perm[0] % n, reflection)
            if all(h(i) == perm[i] for i in range(n)):
                return h
        raise NotAnAutomorphism("vertex map does not preserve the cyclic order")

    def vertex_map(self) -> tuple[int, ...]:
        return tuple(int(self(i)) for i in range(self.n))


def _norm(c) -> Chord:
    a, b = Fraction(c[0]), Fraction(c[1])
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SlicePattern:
    n: int
    E: tuple[Chord, ...]
    V: tuple[Chord, ...]

    def to_json(self) -> dict:
        def enc(c):
            return [str(c[0]), str(c[1])]

        return {"n": self.n, "E": [enc(c) for c in self.E], "V": [enc(c) for c in self.V]}


def _inside(x, a, b) -> bool:
    """x strictly inside the circle arc from a to b (a < b as numbers)."""
    return a < x < b


def chords_cross(c: Chord, d: Chord) -> bool:
    a, b = c
    return _inside(d[0], a, b) != _inside(d[1], a, b) and not (set(c) & set(d))


def chords_disjoint(c: Chord, d: Chord, allow_shared_endpoint: bool = False) -> bool:
    if set(c) & set(d):
        return allow_shared_endpoint and c != d
    return not chords_cross(c, d)


def _on_edge_interior(x: Fraction, i: int, n: int) -> bool:
    """x lies strictly inside the edge v_i v_{i+1}."""
    i %= n
    return i < x < i + 1


def check_slice_pattern(p: SlicePattern, h: Dihedral | None = None) -> list[str]:
    """All violated conditions (empty when ``p`` is a valid, h-invariant pattern)."""
    n = p.n
    bad = []
    if len(p.E) != n or len(p.V) != n:
        return ["wrong number of arcs"]
    for c in p.E + p.V:
        if not all(0 <= x < n for x in c):
            bad.append(f"endpoint of {c} is not on the boundary")
    for i, c in enumerate(p.E):
        if set(c) != {Fraction(i), Fraction((i + 1) % n)} or (n > 1 and c[0] == c[1]):
            bad.append(f"E_{i} does not join v_{i} and v_{(i + 1) % n}")
    for i, c in enumerate(p.V):
        a, b = c
        ok = (_on_edge_interior(a, i - 1, n) and _on_edge_interior(b, i, n)) or (
            _on_edge_interior(b, i - 1, n) and _on_edge_interior(a, i, n)
        )
        if not ok or a == b:
            bad.append(f"V_{i} endpoints are not inside the two edges at v_{i}")
    # arcs are chords, so they meet the boundary only at their endpoints;
    # E-arcs must not end at edge-interior points and V-arcs not at vertices
    for c in p.V:
        if any(x.denominator == 1 for x in c):
            bad.append(f"V-arc {c} ends at a vertex")
    for i in range(n):
        for j in range(i + 1, n):
            if not chords_disjoint(p.E[i], p.E[j], allow_shared_endpoint=True):
                bad.append(f"E_{i} meets E_{j}")
            if not chords_disjoint(p.V[i], p.V[j]):
                bad.append(f"V_{i} meets V_{j}")
    for i in range(n):
        for j in range(n):
            if j in (i, (i - 1) % n):
                continue
            if not chords_disjoint(p.V[i], p.E[j]):
                bad.append(f"V_{i} meets E_{j}")
    if h is not None:
        if {h.chord(c) for c in p.E} != {_norm(c) for c in p.E}:
            bad.append("h does not preserve the E-arcs")
        if {h.chord(c) for c in p.V} != {_norm(c) for c in p.V}:
            bad.append("h does not preserve the V-arcs")
    return bad


def _as_dihedral(n: int, h) -> Dihedral:
    if h is None:
        return Dihedral(n, 0, False)
    if isinstance(h, Dihedral):
        if h.n != n:
            raise NotAnAutomorphism("symmetry is for a different polygon")
        return h
    if isinstance(h, tuple) and len(h) == 2 and isinstance(h[0], str):
        kind, k = h
        if kind not in ("rotation", "reflection"):
            raise NotAnAutomorphism(f"unknown symmetry kind {kind!r}")
        return Dihedral(n, k % n, kind == "reflection")
    return Dihedral.from_vertex_map(h)


def slice_pattern(n: int, h=None) -> SlicePattern:
    """A slice pattern on the n-gon preserved by the involution ``h``.

    ``h`` is a vertex permutation, a ``("rotation", k)`` /
    ``("reflection", k)`` pair, a :class:`Dihedral`, or ``None`` for the
    identity.  The V-arcs are chosen on representatives of the orbits of
    <h> and carried to the rest of each orbit by ``h``; arcs that ``h``
    maps to themselves are chosen symmetric.
    """
    if n < 3:
        # both E-arcs of a bigon join the same two vertices, which chords cannot tell apart
        raise ValueError("slice patterns need n >= 3")
    h = _as_dihedral(n, h)
    if not h.is_involution():
        raise NotAnInvolution(f"{h} is not an involution")
    E = tuple(_norm((i, (i + 1) % n)) for i in range(n))
    left: dict[int, Fraction] = {}
    right: dict[int, Fraction] = {}
    for i in range(n):
        if i in left:
            continue
        j = int(h(i))
        if j == i and h.reflection:
            # V_i must be mapped to itself, which swaps its two sides
            left[i] = right[i] = Fraction(1, 3)
            continue
        left[i], right[i] = Fraction(1, 4), Fraction(1, 3)
        if j != i:
            # h(V_i) = V_j: a reflection swaps the two sides, a rotation keeps them
            if h.reflection:
                left[j], right[j] = right[i], left[i]
            else:
                left[j], right[j] = left[i], right[i]
    V = tuple(_norm(((i - left[i]) % n, i + right[i])) for i in range(n))
    return SlicePattern(n, E, V)


def dihedral_involutions(n: int) -> list[Dihedral]:
    out = [Dihedral(n, k, False) for k in range(n) if (2 * k) % n == 0]
    out += [Dihedral(n, k, True) for k in range(n)]
    return out
