"""Cellular group actions on 2-complexes.

A generator acts by a :class:`CellMap`: a vertex permutation, an edge
permutation with orientation flips, and a face permutation that also records
how the boundary walk lands on the image face (rotation offset and whether
the walk is read backwards).  Relators are checked by composing maps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complex import DirectedEdge, Slot, TwoComplex
from .errors import NotAnAction
from .presentation import Word


@dataclass(frozen=True)
class CellMap:
    vertices: Mapping[int, int]
    edges: Mapping[int, tuple[int, int]]  # e -> (image, flip) with flip in {0, 1}
    faces: Mapping[int, tuple[int, int, bool]]  # f -> (image, offset, reversed)

    def vertex(self, v: int) -> int:
        return self.vertices[v]

    def directed_edge(self, d: DirectedEdge) -> DirectedEdge:
        e, flip = self.edges[d.edge]
        return DirectedEdge(e, -d.sign if flip else d.sign)

    def slot(self, X: TwoComplex, s: Slot) -> Slot:
        f, off, rev = self.faces[s.face]
        k = len(X.face(f))
        return Slot(f, (off - s.index - 1) % k if rev else (off + s.index) % k)

    def position(self, X: TwoComplex, f: int, i: int) -> tuple[int, int]:
        g, off, rev = self.faces[f]
        k = len(X.face(g))
        return g, (off - i) % k if rev else (off + i) % k

    def is_total(self, X: TwoComplex) -> bool:
        return (
            len(self.vertices) == len(X.vertices)
            and len(self.edges) == len(X.edges)
            and len(self.faces) == len(X.faces)
        )


def identity_map(X: TwoComplex) -> CellMap:
    return CellMap(
        {v: v for v in X.vertices},
        {e: (e, 0) for e in X.edges},
        {f: (f, 0, False) for f in X.faces},
    )


def compose(X: TwoComplex, a: CellMap, b: CellMap) -> CellMap:
    """The map ``a o b`` (apply ``b`` first).  Cells ``b`` sends outside ``a``'s domain are dropped."""
    vertices = {v: a.vertices[w] for v, w in b.vertices.items() if w in a.vertices}
    edges = {}
    for e, (e1, f1) in b.edges.items():
        if e1 in a.edges:
            e2, f2 = a.edges[e1]
            edges[e] = (e2, f1 ^ f2)
    faces = {}
    for f, (f1, o1, r1) in b.faces.items():
        if f1 in a.faces:
            f2, o2, r2 = a.faces[f1]
            k = len(X.face(f))
            faces[f] = (f2, (o2 - o1 if r2 else o2 + o1) % k, r1 != r2)
    return CellMap(vertices, edges, faces)


def invert(X: TwoComplex, m: CellMap) -> CellMap:
    vertices = {w: v for v, w in m.vertices.items()}
    edges = {e1: (e, flip) for e, (e1, flip) in m.edges.items()}
    faces = {}
    for f, (f1, off, rev) in m.faces.items():
        k = len(X.face(f))
        faces[f1] = (f, off % k if rev else (-off) % k, rev)
    return CellMap(vertices, edges, faces)


def face_darts(X: TwoComplex, f: int) -> list[DirectedEdge]:
    face = X.face(f)
    return [DirectedEdge(e, s) for e, s in zip(face.edges, face.signs)]


def cyclic_key(darts: Sequence[DirectedEdge], reflect: bool = True) -> tuple:
    """Canonical form of a closed dart sequence up to rotation (and reversal)."""
    seqs = [tuple(darts)]
    if reflect:
        seqs.append(tuple(d.reverse() for d in reversed(darts)))
    best = None
    for s in seqs:
        for i in range(len(s) or 1):
            rot = s[i:] + s[:i]
            if best is None or rot < best:
                best = rot
    return best


def align(target: Sequence[DirectedEdge], image: Sequence[DirectedEdge]) -> tuple[int, bool] | None:
    """Offset/reversal placing ``image`` (slot i) on ``target``, or ``None``."""
    k = len(target)
    if len(image) != k:
        return None
    for off in range(k):
        if all(target[(off + i) % k] == image[i] for i in range(k)):
            return off, False
    for off in range(k):
        if all(target[(off - i - 1) % k] == image[i].reverse() for i in range(k)):
            return off, True
    return None


def face_map_from_edges(
    X: TwoComplex,
    vertices: Mapping[int, int],
    edges: Mapping[int, tuple[int, int]],
    face_key=None,
) -> dict[int, tuple[int, int, bool]]:
    """Extend a vertex/edge map to faces by matching boundary walks.

    ``face_key`` may map a face to a label that images must share, which
    disambiguates faces sitting on the same circuit.  Faces whose image walk
    leaves the edge domain are skipped (partial maps on balls).
    """
    by_circuit: dict[tuple, list[int]] = {}
    for f in X.faces:
        by_circuit.setdefault(cyclic_key(face_darts(X, f)), []).append(f)
    out = {}
    for f in X.faces:
        image = []
        for d in face_darts(X, f):
            if d.edge not in edges:
                break
            e, flip = edges[d.edge]
            image.append(DirectedEdge(e, -d.sign if flip else d.sign))
        else:
            candidates = by_circuit.get(cyclic_key(image), [])
            if face_key is not None:
                candidates = [g for g in candidates if face_key(g) == face_key(f)]
            if not candidates:
                continue
            g = candidates[0]
            out[f] = (g,) + align(face_darts(X, g), image)
    return out


@dataclass
class ActionCertificate:
    incidence: bool
    relators: bool
    regular_on_vertices: bool
    free_on_vertices: bool
    transitive_on_vertices: bool
    problems: list[str] = field(default_factory=list)


@dataclass
class CellularAction:
    """Generators acting on ``complex`` by cell maps (left action)."""

    complex: TwoComplex
    generators: tuple[str, ...]
    maps: dict[str, CellMap]
    relators: tuple[Word, ...] = ()
    model: object = None
    partial: bool = False
    vertex_handles: tuple = ()
    edge_labels: dict = field(default_factory=dict)
    face_labels: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._cert = None

    def letter_map(self, letter: int) -> CellMap:
        m = self.maps[self.generators[abs(letter) - 1]]
        return m if letter > 0 else invert(self.complex, m)

    def word_map(self, word: Word) -> CellMap:
        X = self.complex
        m = identity_map(X)
        for letter in word:
            m = compose(X, m, self.letter_map(letter))
        return m

    def handle_of(self, v: int):
        return self.vertex_handles[v] if self.vertex_handles else None

    # certificates

    def incidence_problems(self) -> list[str]:
        X = self.complex
        out = []
        for name in self.generators:
            m = self.maps[name]
            if not self.partial and not m.is_total(X):
                out.append(f"{name}: map is not total")
                continue
            for table, label in ((m.vertices, "vertex"), (m.edges, "edge"), (m.faces, "face")):
                images = [t[0] if isinstance(t, tuple) else t for t in table.values()]
                if len(set(images)) != len(images):
                    out.append(f"{name}: {label} map is not injective")
            for e, (e1, flip) in m.edges.items():
                a, b = X.ends(e)
                if a not in m.vertices or b not in m.vertices:
                    out.append(f"{name}: edge {e} maps but an endpoint does not")
                    continue
                want = (m.vertices[a], m.vertices[b])
                got = X.ends(e1)
                if (got[::-1] if flip else got) != want:
                    out.append(f"{name}: edge {e} ends not preserved")
            for f, (f1, off, rev) in m.faces.items():
                darts = face_darts(X, f)
                if any(d.edge not in m.edges for d in darts):
                    out.append(f"{name}: face {f} maps but a boundary edge does not")
                    continue
                image = [m.directed_edge(d) for d in darts]
                a = align(face_darts(X, f1), image)
                if a is None or (len(image) and not _same_alignment(face_darts(X, f1), image, off, rev)):
                    out.append(f"{name}: face {f} walk not preserved")
        return out

    def relator_problems(self) -> list[str]:
        X = self.complex
        ident = identity_map(X)
        out = []
        for r in self.relators:
            m = self.word_map(r)
            if self.partial:
                bad = [v for v, w in m.vertices.items() if v != w]
                bad += [e for e, t in m.edges.items() if t != (e, 0)]
                bad += [f for f, t in m.faces.items() if t != (f, 0, False)]
            else:
                bad = m != ident
            if bad:
                out.append(f"relator {r} does not act trivially")
        return out

    def vertex_regularity(self) -> tuple[bool, bool]:
        """(transitive, free) for the vertex action of the generated group.

        Freeness uses Schreier generators of the base-vertex stabiliser: with
        a transitive action the stabiliser is trivial iff every Schreier
        generator acts as the identity.  For a finite model the group order
        must also match the number of vertices (a kernel would make the
        action non-free as an action of the model group).
        """
        X = self.complex
        V = list(X.vertices)
        if not V:
            return False, False
        perms = [self.maps[n].vertices for n in self.generators]
        invs = [{w: v for v, w in p.items()} for p in perms]
        steps = perms + invs
        base = V[0]
        transversal = {base: {v: v for v in V}}
        queue = deque([base])
        while queue:
            u = queue.popleft()
            t = transversal[u]
            for p in steps:
                w = p[u]
                if w not in transversal:
                    # t sends base to u; p o t sends base to w
                    transversal[w] = {v: p[t[v]] for v in V}
                    queue.append(w)
        transitive = len(transversal) == len(V)
        if not transitive:
            # free still decidable: the orbit-wise check below is per orbit
            return False, self._free_nontransitive(steps, V)
        for u, t in transversal.items():
            for p in steps:
                w = p[u]
                tw_inv = {b: a for a, b in transversal[w].items()}
                if any(tw_inv[p[t[v]]] != v for v in V):
                    return True, False
        model = self.model
        if model is not None and getattr(model, "is_finite", lambda: False)():
            try:
                if model.order != len(V):
                    return True, False
            except Exception:
                pass
        return True, True

    def _free_nontransitive(self, steps, V) -> bool:
        # brute force over the generated permutation group; used for small cases only
        ident = tuple(V)
        index = {v: i for i, v in enumerate(V)}
        gens = [tuple(p[v] for v in V) for p in steps]
        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(g[index[x[i]]] for i in range(len(V)))
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > 100_000:
                        return False
        return all(x == ident or all(x[i] != V[i] for i in range(len(V))) for x in seen)

    def certificate(self) -> ActionCertificate:
        if self._cert is None:
            inc = self.incidence_problems()
            rel = self.relator_problems()
            if self.partial:
                transitive = free = False
            else:
                transitive, free = self.vertex_regularity()
            self._cert = ActionCertificate(
                incidence=not inc,
                relators=not rel,
                regular_on_vertices=transitive and free and not inc and not rel,
                free_on_vertices=free,
                transitive_on_vertices=transitive,
                problems=inc + rel,
            )
        return self._cert

    @property
    def regular_on_vertices(self) -> bool:
        return self.certificate().regular_on_vertices

    def require_valid(self) -> None:
        c = self.certificate()
        if not (c.incidence and c.relators):
            raise NotAnAction("; ".join(c.problems[:5]))


def _same_alignment(target, image, off, rev) -> bool:
    k = len(target)
    if rev:
        return all(target[(off - i - 1) % k] == image[i].reverse() for i in range(k))
    return all(target[(off + i) % k] == image[i] for i in range(k))


def action_from_vertex_maps(
    X: TwoComplex,
    vertex_maps: Mapping[str, Mapping[int, int]],
    relators: Sequence[Word] = (),
    model=None,
) -> CellularAction:
    """Extend vertex permutations to cells when edges are determined by their ends.

    Parallel edges make the extension ambiguous; they are matched in id order,
    which is correct for the standard constructions but not in general.
    """
    by_ends: dict[tuple[int, int], list[int]] = {}
    for e, (a, b) in X.edges.items():
        by_ends.setdefault((a, b), []).append(e)
    maps = {}
    for name, vm in vertex_maps.items():
        used: dict[tuple[int, int], int] = {}
        edges = {}
        for e, (a, b) in sorted(X.edges.items()):
            ia, ib = vm[a], vm[b]
            for key, flip in (((ia, ib), 0), ((ib, ia), 1)):
                pool = by_ends.get(key, [])
                k = used.get(key, 0)
                if k < len(pool):
                    edges[e] = (pool[k], flip)
                    used[key] = k + 1
                    break
            else:
                raise NotAnAction(f"{name}: no image for edge {e}")
        faces = face_map_from_edges(X, vm, edges)
        maps[name] = CellMap(dict(vm), edges, faces)
    return CellularAction(X, tuple(vertex_maps), maps, tuple(relators), model)
