"""Finite 2-complexes with explicit attachment walks.

A face is a closed walk ``v0 e0 v1 e1 ... v{k-1} e{k-1}`` where edge ``e_i``
joins ``v_i`` to ``v_{i+1 mod k}``.  The traversal sign of each slot is
stored explicitly (+1 when the walk runs from ``ends[0]`` to ``ends[1]``),
so loops and parallel edges attach unambiguously.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import InvalidComplex, UnknownVertex


class DirectedEdge(NamedTuple):
    edge: int
    sign: int  # +1: ends[0] -> ends[1]

    def reverse(self) -> "DirectedEdge":
        return DirectedEdge(self.edge, -self.sign)

    def key(self) -> str:
        return f"e{self.edge}{'+' if self.sign > 0 else '-'}"

    @classmethod
    def from_key(cls, key: str) -> "DirectedEdge":
        if len(key) < 3 or key[0] != "e" or key[-1] not in "+-":
            raise ValueError(f"bad directed edge key {key!r}")
        return cls(int(key[1:-1]), 1 if key[-1] == "+" else -1)


class DirectedFace(NamedTuple):
    face: int
    sign: int  # +1: walk order

    def reverse(self) -> "DirectedFace":
        return DirectedFace(self.face, -self.sign)


class Slot(NamedTuple):
    """Occurrence ``index`` of an edge in the walk of ``face``."""

    face: int
    index: int


@dataclass(frozen=True)
class Face:
    verts: tuple[int, ...]
    edges: tuple[int, ...]
    signs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def walk(self) -> list[int]:
        out = []
        for v, e in zip(self.verts, self.edges):
            out.extend((v, e))
        return out

    def corner_edges(self, i: int) -> tuple[int, int]:
        """Slots (incoming, outgoing) meeting at vertex position ``i``."""
        return (i - 1) % len(self), i


def _vertex_at(ends: tuple[int, int], sign: int, head: bool) -> int:
    if head:
        return ends[1] if sign > 0 else ends[0]
    return ends[0] if sign > 0 else ends[1]


class TwoComplex:
    """Immutable 2-complex.  Ids are integers; order of ids is canonical."""

    __slots__ = ("_vertices", "_edges", "_faces", "_slots", "_vindex", "frontier")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, Sequence[int]],
        faces: Mapping[int, Face | Sequence] | None = None,
        frontier: Iterable[int] = (),
    ) -> None:
        self._vertices = tuple(sorted(set(vertices)))
        vset = set(self._vertices)
        self._edges: dict[int, tuple[int, int]] = {}
        for e in sorted(edges):
            u, v = edges[e]
            if u not in vset or v not in vset:
                raise InvalidComplex(f"edge {e} has an unknown endpoint")
            self._edges[e] = (u, v)
        self._faces: dict[int, Face] = {}
        for f in sorted(faces or {}):
            face = faces[f]
            if not isinstance(face, Face):
                face = self._face_from_walk(face)
            self._check_face(f, face)
            self._faces[f] = face
        # ball truncations record edges whose face set is incomplete
        self.frontier = frozenset(frontier)
        if not self.frontier <= set(self._edges):
            raise InvalidComplex("frontier edge not in complex")
        slots: dict[int, list[Slot]] = {e: [] for e in self._edges}
        for f, face in self._faces.items():
            for i, e in enumerate(face.edges):
                slots[e].append(Slot(f, i))
        self._slots = {e: tuple(s) for e, s in slots.items()}
        self._vindex = None

    def _face_from_walk(self, walk: Sequence) -> Face:
        walk = list(walk)
        if not walk or len(walk) % 2:
            raise InvalidComplex(f"walk must alternate vertices and edges: {walk}")
        verts = tuple(walk[0::2])
        edges = tuple(walk[1::2])
        signs = []
        k = len(verts)
        for i, e in enumerate(edges):
            if e not in self._edges:
                raise InvalidComplex(f"unknown edge {e} in walk")
            a, b = verts[i], verts[(i + 1) % k]
            ends = self._edges[e]
            if ends == (a, b):
                signs.append(1)
            elif ends == (b, a):
                signs.append(-1)
            else:
                raise InvalidComplex(f"edge {e} does not join {a} and {b}")
        return Face(verts, edges, tuple(signs))

    def _check_face(self, f: int, face: Face) -> None:
        k = len(face.edges)
        if k == 0 or len(face.verts) != k or len(face.signs) != k:
            raise InvalidComplex(f"face {f}: malformed walk")
        for i, (e, s) in enumerate(zip(face.edges, face.signs)):
            if e not in self._edges or s not in (1, -1):
                raise InvalidComplex(f"face {f}: bad slot {i}")
            ends = self._edges[e]
            tail = _vertex_at(ends, s, head=False)
            head = _vertex_at(ends, s, head=True)
            if tail != face.verts[i] or head != face.verts[(i + 1) % k]:
                raise InvalidComplex(f"face {f}: edge {e} does not join its flanking vertices")

    # -- basic accessors ------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        return dict(self._edges)

    @property
    def faces(self) -> dict[int, Face]:
        return dict(self._faces)

    def ends(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def face(self, f: int) -> Face:
        return self._faces[f]

    def edge_ids(self) -> Iterator[int]:
        return iter(self._edges)

    def face_ids(self) -> Iterator[int]:
        return iter(self._faces)

    def slots(self, e: int) -> tuple[Slot, ...]:
        return self._slots[e]

    def slot_sign(self, slot: Slot) -> int:
        return self._faces[slot.face].signs[slot.index]

    def tail(self, d: DirectedEdge) -> int:
        return _vertex_at(self._edges[d.edge], d.sign, head=False)

    def head(self, d: DirectedEdge) -> int:
        return _vertex_at(self._edges[d.edge], d.sign, head=True)

    def directed_edges(self) -> Iterator[DirectedEdge]:
        for e in self._edges:
            yield DirectedEdge(e, 1)
            yield DirectedEdge(e, -1)

    def directed_faces(self) -> Iterator[DirectedFace]:
        for f in self._faces:
            yield DirectedFace(f, 1)
            yield DirectedFace(f, -1)

    def counts(self) -> tuple[int, int, int]:
        return len(self._vertices), len(self._edges), len(self._faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def incident_edges(self, v: int) -> list[int]:
        if self._vindex is None:
            idx: dict[int, list[int]] = {u: [] for u in self._vertices}
            for e, (a, b) in self._edges.items():
                idx[a].append(e)
                if b != a:
                    idx[b].append(e)
            self._vindex = idx
        if v not in self._vindex:
            raise UnknownVertex(v)
        return list(self._vindex[v])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwoComplex)
            and self._vertices == other._vertices
            and self._edges == other._edges
            and self._faces == other._faces
            and self.frontier == other.frontier
        )

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items()), len(self._faces)))

    def __repr__(self) -> str:
        v, e, f = self.counts()
        return f"TwoComplex(V={v}, E={e}, F={f})"

    # -- derived complexes ------------------------------------------------
    def without_faces(self, drop: Iterable[int]) -> "TwoComplex":
        drop = set(drop)
        return TwoComplex(
            self._vertices,
            self._edges,
            {f: face for f, face in self._faces.items() if f not in drop},
            self.frontier,
        )

    def one_skeleton(self) -> "TwoComplex":
        return TwoComplex(self._vertices, self._edges, {})

    def relabelled(self, vmap: Mapping[int, int], emap: Mapping[int, int], fmap: Mapping[int, int]) -> "TwoComplex":
        faces = {
            fmap[f]: Face(tuple(vmap[v] for v in face.verts), tuple(emap[e] for e in face.edges), face.signs)
            for f, face in self._faces.items()
        }
        return TwoComplex(
            [vmap[v] for v in self._vertices],
            {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in self._edges.items()},
            faces,
            [emap[e] for e in self.frontier],
        )

    # -- regularity predicates -------------------------------------------
    def is_edge_regular(self) -> bool:
        return all(len(set(face.edges)) == len(face.edges) for face in self._faces.values())

    def is_regular(self) -> bool:
        return all(
            len(set(face.edges)) == len(face) and len(set(face.verts)) == len(face)
            for face in self._faces.values()
        )

    def has_simple_skeleton(self) -> bool:
        seen = set()
        for a, b in self._edges.values():
            if a == b:
                return False
            key = (min(a, b), max(a, b))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_simplicial(self) -> bool:
        return (
            self.is_regular()
            and self.has_simple_skeleton()
            and all(len(face) == 3 for face in self._faces.values())
        )

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.incident_edges(v):
                a, b = self._edges[e]
                for w in (a, b):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return len(seen) == len(self._vertices)


def complex_from_cycles(cycles: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> TwoComplex:
    """Regular complex from vertex cycles; edges are created per vertex pair."""
    cycles = [tuple(c) for c in cycles]
    verts = set(vertices)
    edge_id: dict[tuple[int, int], int] = {}
    edges: dict[int, tuple[int, int]] = {}

    def edge(a: int, b: int) -> tuple[int, int]:
        key = (min(a, b), max(a, b))
        if key not in edge_id:
            edge_id[key] = len(edge_id)
            edges[edge_id[key]] = key
        e = edge_id[key]
        return e, (1 if edges[e] == (a, b) else -1)

    faces = {}
    for f, cyc in enumerate(cycles):
        verts.update(cyc)
        es, ss = [], []
        for i, a in enumerate(cyc):
            e, s = edge(a, cyc[(i + 1) % len(cyc)])
            es.append(e)
            ss.append(s)
        faces[f] = Face(cyc, tuple(es), tuple(ss))
    return TwoComplex(verts, edges, faces)


def graph_complex(vertices: Iterable[int], edge_list: Iterable[tuple[int, int]]) -> TwoComplex:
    """1-dimensional complex (a multigraph) with edges numbered in order."""
    return TwoComplex(vertices, dict(enumerate(edge_list)), {})
