"""Cayley graphs and Cayley complexes with their left actions.

Conventions: one edge per unordered pair {g, gs}, so an involution gives a
single edge (``doubled=True`` gives one edge per (g, s)).  Faces are one per
distinct boundary circuit of relator walks, skipping walks whose edge word
cancels cyclically (``duplicate_faces=True`` keeps one face per relator walk
up to rotation instead).  Infinite models need a ``radius``: the result is
the ball of that radius, keeping only faces whose whole walk lies inside and
marking as frontier every edge that some omitted face passes through.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .action import CellMap, CellularAction, cyclic_key, face_map_from_edges
from .complex import DirectedEdge, Face, TwoComplex
from .errors import InfiniteOrUnknown, NotAnAction, NotGenerating, RelatorWalkNotClosed, UnknownGenerator
from .groups import GroupModel
from .pi1 import Pi1Presentation, pi1_presentation
from .presentation import Presentation, Word


def _generator_indices(model: GroupModel, gens) -> list[int]:
    if gens is None:
        return list(range(len(model.generators)))
    out = []
    for g in gens:
        if isinstance(g, str):
            if g not in model.generators:
                raise UnknownGenerator(f"unknown generator {g!r}")
            out.append(model.generators.index(g))
        else:
            out.append(int(g))
    return out


def _elements(model: GroupModel, gens: list[int], radius: int | None) -> tuple[list, bool]:
    """Vertex handles in BFS order and whether the result is the whole group."""
    if radius is not None:
        elems = model.ball(gens, radius)
        whole = len(model.ball(gens, radius + 1)) == len(elems)
        return elems, whole
    try:
        order = model.order
    except InfiniteOrUnknown as exc:
        raise InfiniteOrUnknown(f"{exc}; supply a radius for a ball truncation") from exc
    elems = model.ball(gens, order)
    if len(elems) != order:
        raise NotGenerating(f"generators reach {len(elems)} of {order} elements")
    return elems, True


class _Builder:
    def __init__(self, model, gens, radius, doubled):
        self.model = model
        self.gens = _generator_indices(model, gens)
        self.elems, self.whole = _elements(model, self.gens, radius)
        self.index = {g: i for i, g in enumerate(self.elems)}
        self.doubled = doubled
        self.gen_elems = [model.generator(i) for i in self.gens]
        self.edges: dict[int, tuple[int, int]] = {}
        self.edge_of: dict[tuple[int, int], int] = {}  # (vertex id, position in gens) -> edge id
        self.labels: dict[int, tuple] = {}
        for vi, g in enumerate(self.elems):
            for k, s in enumerate(self.gen_elems):
                h = model.mul(g, s)
                wi = self.index.get(h)
                if wi is None:
                    continue
                if not doubled and (wi, k) in self.edge_of and self.edges[self.edge_of[(wi, k)]] == (wi, vi):
                    # involution: the edge from gs already covers {g, gs}
                    self.edge_of[(vi, k)] = self.edge_of[(wi, k)]
                    continue
                e = len(self.edges)
                self.edges[e] = (vi, wi)
                self.edge_of[(vi, k)] = e
                self.labels[e] = (g, self.gens[k])

    def step(self, vi: int, letter: int) -> tuple[DirectedEdge, int] | None:
        """The dart followed from vertex ``vi`` along ``letter``, and where it ends."""
        gi = abs(letter) - 1
        if gi not in self.gens:
            raise UnknownGenerator(f"letter {letter} not among the Cayley generators")
        k = self.gens.index(gi)
        g = self.elems[vi]
        if letter > 0:
            e = self.edge_of.get((vi, k))
            if e is None:
                return None
            a, b = self.edges[e]
            if a == vi and self.labels[e][0] == g:
                return DirectedEdge(e, 1), b
            return DirectedEdge(e, -1), a
        h = self.model.mul(g, self.model.inv(self.gen_elems[k]))
        wi = self.index.get(h)
        if wi is None:
            return None
        e = self.edge_of.get((wi, k))
        if e is None:
            return None
        a, b = self.edges[e]
        if self.labels[e][0] == h and a == wi:
            return DirectedEdge(e, -1), wi
        return DirectedEdge(e, 1), wi

    def walk(self, vi: int, word: Word):
        """Darts and vertices of the walk of ``word`` from ``vi``; ``None`` if it leaves the ball."""
        darts, verts = [], [vi]
        v = vi
        for letter in word:
            st = self.step(v, letter)
            if st is None:
                return None
            d, v = st
            darts.append(d)
            verts.append(v)
        return darts, verts


def _cancels(darts: Sequence[DirectedEdge]) -> bool:
    stack: list[DirectedEdge] = []
    for d in darts:
        if stack and stack[-1] == d.reverse():
            stack.pop()
        else:
            stack.append(d)
    while len(stack) >= 2 and stack[0] == stack[-1].reverse():
        stack = stack[1:-1]
    return not stack


def cayley_graph(model: GroupModel, gens=None, radius: int | None = None, doubled: bool = False):
    """Cayley graph of ``model`` over ``gens`` (names or indices, default all)."""
    b = _Builder(model, gens, radius, doubled)
    X = TwoComplex(range(len(b.elems)), b.edges, {})
    return X, _action(b, X, {}, ())


def cayley_complex(
    model: GroupModel,
    presentation: Presentation | Sequence[Word],
    radius: int | None = None,
    doubled: bool = False,
    duplicate_faces: bool = False,
):
    """Cayley complex of ``presentation`` realised in ``model``.

    ``presentation`` is a Presentation on the model's generators or a list of
    relator words.  Raises RelatorWalkNotClosed when a relator is not the
    identity in the model.
    """
    relators = tuple(presentation.relators) if isinstance(presentation, Presentation) else tuple(presentation)
    if isinstance(presentation, Presentation) and tuple(presentation.generators) != tuple(model.generators):
        raise UnknownGenerator("presentation and model have different generators")
    for r in relators:
        if model.evaluate(r) != model.identity:
            raise RelatorWalkNotClosed(f"relator {r} is not closed in the model")
    b = _Builder(model, None, radius, doubled)
    faces: dict[int, Face] = {}
    labels: dict[int, tuple] = {}
    seen: dict[tuple, int] = {}
    frontier: set[int] = set()
    n = len(b.elems)
    for ri, r in enumerate(relators):
        for vi in range(n):
            w = b.walk(vi, r)
            if w is None:
                continue
            darts, verts = w
            if verts[-1] != vi:
                raise RelatorWalkNotClosed(f"relator {r} does not close at vertex {vi}")
            if not duplicate_faces and _cancels(darts):
                continue
            key = cyclic_key(darts) if not duplicate_faces else (ri, cyclic_key(darts, reflect=False))
            if key in seen:
                continue
            f = len(faces)
            seen[key] = f
            faces[f] = Face(tuple(verts[:-1]), tuple(d.edge for d in darts), tuple(d.sign for d in darts))
            labels[f] = (b.elems[vi], ri)
    if not b.whole:
        frontier = _frontier(b, relators)
    X = TwoComplex(range(n), b.edges, faces, frontier=frontier)
    face_key = (lambda f: labels[f][1]) if duplicate_faces else None
    return X, _action(b, X, labels, relators, face_key)


def _frontier(b: _Builder, relators) -> set[int]:
    """Edges of the ball crossed by a relator walk that leaves the ball."""
    model = b.model
    out = set()
    for e, (vi, wi) in b.edges.items():
        for r in relators:
            for pos, letter in enumerate(r):
                # walks of r that traverse e at position pos, in either direction
                for start in _walk_starts(model, b, vi, wi, e, r, pos, letter):
                    if not _walk_inside(model, b, start, r):
                        out.add(e)
                        break
                if e in out:
                    break
            if e in out:
                break
    return out


def _walk_starts(model, b, vi, wi, e, r, pos, letter):
    """Group elements from which the walk of ``r`` uses edge ``e`` at step ``pos``."""
    k_of = {gi: k for k, gi in enumerate(b.gens)}
    gi = abs(letter) - 1
    if gi != b.labels[e][1]:
        return []
    prefix = r[:pos]
    pinv = model.inv(model.evaluate(prefix))
    s = b.gen_elems[k_of[gi]]
    a, c = b.elems[vi], b.elems[wi]
    starts = []
    # position before the step is a (step along s) or the far end (step along s^-1)
    before = [a, c] if letter > 0 else [c, a]
    for x in before:
        y = model.mul(x, s) if letter > 0 else model.mul(x, model.inv(s))
        if {x, y} == {a, c} or (x == y == a):
            starts.append(model.mul(x, pinv))
    return starts


def _walk_inside(model, b, start, r) -> bool:
    x = start
    if x not in b.index:
        return False
    for letter in r:
        x = model.mul(x, model.letter(letter))
        if x not in b.index:
            return False
    return True


def _action(b: _Builder, X: TwoComplex, face_labels, relators, face_key=None) -> CellularAction:
    model = b.model
    maps = {}
    for k, gi in enumerate(b.gens):
        h = b.gen_elems[k]
        vertices = {}
        for vi, g in enumerate(b.elems):
            wi = b.index.get(model.mul(h, g))
            if wi is not None:
                vertices[vi] = wi
        edges = {}
        for e, (vi, wi) in b.edges.items():
            if vi not in vertices or wi not in vertices:
                continue
            g, gen = b.labels[e]
            img = b.edge_of.get((vertices[vi], b.gens.index(gen)))
            if img is None:
                continue
            a, c = X.ends(img)
            if (a, c) == (vertices[vi], vertices[wi]):
                edges[e] = (img, 0)
            elif (c, a) == (vertices[vi], vertices[wi]):
                edges[e] = (img, 1)
        faces = face_map_from_edges(X, vertices, edges, face_key)
        maps[model.generators[gi]] = CellMap(vertices, edges, faces)
    names = tuple(model.generators[gi] for gi in b.gens)
    # relators are words over all model generators; keep only those in gens
    rels = tuple(r for r in relators if all(abs(x) - 1 in b.gens for x in r))
    rels = tuple(tuple((b.gens.index(abs(x) - 1) + 1) * (1 if x > 0 else -1) for x in r) for r in rels)
    if not relators:
        rels = _graph_relators(model, b)
    return CellularAction(
        X,
        names,
        maps,
        rels,
        model=model if b.whole else None,
        partial=not b.whole,
        vertex_handles=tuple(b.elems),
        edge_labels=dict(b.labels),
        face_labels=dict(face_labels),
    )


def _graph_relators(model, b: _Builder) -> tuple[Word, ...]:
    """Words that are trivial in the model (orders of generators), used for action certificates."""
    out = []
    if not b.whole:
        return ()
    for k in range(len(b.gens)):
        try:
            n = model.element_order(b.gen_elems[k], bound=len(b.elems) + 1)
        except InfiniteOrUnknown:
            continue
        out.append((k + 1,) * n)
    return tuple(out)


@dataclass
class GeneralizedCayleyCertificate:
    regular_on_vertices: bool
    pi1: Pi1Presentation

    @property
    def is_generalized_cayley(self) -> bool | None:
        if not self.regular_on_vertices:
            return False
        if self.pi1.verdict == "trivial-certified":
            return True
        if self.pi1.verdict == "nontrivial-certified":
            return False
        return None


def verify_generalized_cayley(X: TwoComplex, action: CellularAction) -> GeneralizedCayleyCertificate:
    if action.complex is not X and action.complex != X:
        raise NotAnAction("action is on a different complex")
    action.require_valid()
    return GeneralizedCayleyCertificate(action.regular_on_vertices, pi1_presentation(X))
