"""Fundamental-group presentations of finite 2-complexes.

Simple connectivity is undecidable in general, so the verdict is
three-valued: ``trivial`` only when Tietze moves empty the presentation
(or leave a cyclic group with trivial abelianisation), ``nontrivial`` only
with an abelianisation witness, and ``unknown`` otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .complex import TwoComplex
from .errors import DisconnectedComplex
from .presentation import Presentation, Word, cyclic_reduce, free_reduce, invert_word

TRIVIAL = "trivial-certified"
NONTRIVIAL = "nontrivial-certified"
UNKNOWN = "unknown"

MOVE_BUDGET = 10_000
MAX_RELATOR_LENGTH = 5_000


@dataclass(frozen=True)
class Pi1Presentation:
    presentation: Presentation
    verdict: str
    abelian_invariants: tuple[int, ...] = ()  # 0 stands for a free Z factor
    witness: str = ""
    generator_edges: tuple[int, ...] = field(default=(), compare=False)

    @property
    def is_trivial(self) -> bool:
        return self.verdict == TRIVIAL


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, ...]:
    """Invariant factors of the abelian group Z^ncols / rowspace.

    Returns one entry per cyclic factor that is not trivial: ``0`` for Z,
    ``d > 1`` for Z/d.
    """
    m = [list(r) for r in rows if any(r)]
    nrows = len(m)
    diag = []
    r = 0
    for c0 in range(ncols):
        if r >= nrows:
            break
        # find pivot of smallest absolute value in the remaining block
        while True:
            best = None
            for i in range(r, nrows):
                for j in range(c0, ncols):
                    if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            m[r], m[i] = m[i], m[r]
            for row in m:
                row[c0], row[j] = row[j], row[c0]
            p = m[r][c0]
            done = True
            for i in range(r + 1, nrows):
                q = m[i][c0] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                if m[i][c0]:
                    done = False
            for j in range(c0 + 1, ncols):
                q = m[r][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[c0]
                if m[r][j]:
                    done = False
            if done:
                # divisibility condition for the remaining block
                bad = next(
                    ((i, j) for i in range(r + 1, nrows) for j in range(c0 + 1, ncols) if m[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                m[r] = [a + b for a, b in zip(m[r], m[bad[0]])]
        if best is None:
            break
        diag.append(abs(m[r][c0]))
        r += 1
    free = ncols - len(diag)
    return tuple(d for d in diag if d != 1) + (0,) * free


def abelianization(p: Presentation) -> tuple[int, ...]:
    rows = []
    for rel in p.relators:
        row = [0] * p.rank
        for x in rel:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return smith_invariants(rows, p.rank)


def _canonical_cyclic(word: Word) -> Word:
    if not word:
        return word
    best = None
    for w in (word, invert_word(word)):
        for i in range(len(w)):
            rot = w[i:] + w[:i]
            if best is None or rot < best:
                best = rot
    return best


def simplify(p: Presentation, budget: int = MOVE_BUDGET) -> tuple[Presentation, bool]:
    """Tietze-simplify ``p``.  Returns the result and whether the budget sufficed."""
    gens = list(range(1, p.rank + 1))
    rels = [cyclic_reduce(r) for r in p.relators]
    moves = 0
    while True:
        rels = sorted({_canonical_cyclic(cyclic_reduce(r)) for r in rels if cyclic_reduce(r)}, key=lambda r: (len(r), r))
        eliminated = False
        for rel in rels:
            counts: dict[int, int] = {}
            for x in rel:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            single = [g for g in sorted(counts) if counts[g] == 1]
            if not single:
                continue
            g = single[0]
            moves += 1
            if moves > budget:
                return _rebuild(p, gens, rels), False
            # rel = u g^e v  =>  g^e = u^-1 v^-1 ; rotate so g is first
            i = next(k for k, x in enumerate(rel) if abs(x) == g)
            rot = rel[i:] + rel[:i]
            e = 1 if rot[0] > 0 else -1
            rest = rot[1:]
            # g^e rest = 1  =>  g = rest^-1 (e=1) or g = rest (e=-1)
            value = invert_word(rest) if e > 0 else rest
            new_rels = []
            too_long = False
            for other in rels:
                if other is rel:
                    continue
                out: list[int] = []
                for x in other:
                    if abs(x) == g:
                        out.extend(value if x > 0 else invert_word(value))
                    else:
                        out.append(x)
                w = cyclic_reduce(out)
                if len(w) > MAX_RELATOR_LENGTH:
                    too_long = True
                    break
                new_rels.append(w)
            if too_long:
                continue
            gens.remove(g)
            rels = new_rels
            eliminated = True
            break
        if not eliminated:
            return _rebuild(p, gens, rels), True


def _rebuild(p: Presentation, gens: list[int], rels: list[Word]) -> Presentation:
    index = {g: i + 1 for i, g in enumerate(gens)}
    new_rels = []
    for r in rels:
        r = cyclic_reduce(r)
        if r:
            new_rels.append(tuple(index[abs(x)] * (1 if x > 0 else -1) for x in r))
    return Presentation(tuple(p.generators[g - 1] for g in gens), tuple(new_rels))


def spanning_tree_edges(X: TwoComplex) -> set[int]:
    tree = set()
    if not X.vertices:
        return tree
    seen = {X.vertices[0]}
    queue = deque([X.vertices[0]])
    while queue:
        v = queue.popleft()
        for e in sorted(X.incident_edges(v)):
            for w in X.ends(e):
                if w not in seen:
                    seen.add(w)
                    tree.add(e)
                    queue.append(w)
    if len(seen) != len(X.vertices):
        raise DisconnectedComplex("complex is not connected")
    return tree


def raw_presentation(X: TwoComplex) -> tuple[Presentation, tuple[int, ...]]:
    """Spanning-tree presentation: one generator per non-tree edge, one relator per face."""
    tree = spanning_tree_edges(X)
    gen_edges = tuple(e for e in X.edge_ids() if e not in tree)
    index = {e: i + 1 for i, e in enumerate(gen_edges)}
    rels = []
    for face in X.faces.values():
        w = tuple(index[e] * s for e, s in zip(face.edges, face.signs) if e in index)
        w = free_reduce(w)
        if w:
            rels.append(w)
    names = tuple(f"e{e}" for e in gen_edges)
    return Presentation(names, tuple(rels)), gen_edges


def pi1_presentation(X: TwoComplex, budget: int = MOVE_BUDGET) -> Pi1Presentation:
    if not X.is_connected():
        raise DisconnectedComplex("complex is not connected")
    raw, gen_edges = raw_presentation(X)
    simp, _ = simplify(raw, budget)
    inv = abelianization(simp)
    if simp.rank == 0:
        return Pi1Presentation(simp, TRIVIAL, inv, "empty presentation", gen_edges)
    if inv:
        return Pi1Presentation(simp, NONTRIVIAL, inv, f"abelianisation {format_invariants(inv)}", gen_edges)
    if simp.rank == 1:
        # a one-generator group is cyclic, so it equals its abelianisation
        return Pi1Presentation(simp, TRIVIAL, inv, "cyclic with trivial abelianisation", gen_edges)
    return Pi1Presentation(simp, UNKNOWN, inv, "perfect presentation not simplified away", gen_edges)


def format_invariants(inv: Sequence[int]) -> str:
    if not inv:
        return "0"
    return " + ".join("Z" if d == 0 else f"Z/{d}" for d in inv)
