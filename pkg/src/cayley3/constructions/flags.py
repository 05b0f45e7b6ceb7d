"""Flag complexes.

A flag is (vertex, edge, face, pre-chamber class) with each cell incident to
the next.  Flags differing in exactly one coordinate are joined by an edge
of that colour, and every cycle alternating between two colours bounds a
face.  Restricting to flags on one vertex gives its pineapple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from ..complex import DirectedFace, Face, TwoComplex
from ..errors import NonUniqueCoordinateSwap, NotEdgeRegular
from ..prechambers import PreChamberPartition, prechambers, successor
from ..rotation import RotationSystem


class Flag(NamedTuple):
    vertex: int
    edge: int
    face: int
    chamber: int


@dataclass
class FlagComplex:
    complex: TwoComplex
    flags: tuple[Flag, ...]  # vertex id i of the complex is flags[i]
    edge_colours: dict[int, int]
    face_colours: dict[int, tuple[int, int]]
    partition: PreChamberPartition

    def face_counts(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for pair in self.face_colours.values():
            out[pair] = out.get(pair, 0) + 1
        return out

    def is_regular_graph(self, degree: int) -> bool:
        deg = {v: 0 for v in self.complex.vertices}
        for a, b in self.complex.edges.values():
            deg[a] += 1
            deg[b] += 1
        return all(d == degree for d in deg.values())


class _Swaps:
    def __init__(self, X: TwoComplex, sigma: RotationSystem, P: PreChamberPartition) -> None:
        self.X, self.sigma, self.P = X, sigma, P
        # flags record the chamber by class index; the face direction is recovered from it
        self.direction: dict[tuple[int, int], int] = {}
        for f in X.face_ids():
            a, b = P.class_of(DirectedFace(f, 1)), P.class_of(DirectedFace(f, -1))
            if a == b:
                raise NonUniqueCoordinateSwap(f"face {f} has both directions in pre-chamber {a}")
            self.direction[(f, a)] = 1
            self.direction[(f, b)] = -1

    def swap(self, x: Flag, colour: int) -> Flag:
        X = self.X
        v, e, f, c = x
        if colour == 0:
            a, b = X.ends(e)
            if a == b:
                raise NonUniqueCoordinateSwap(f"edge {e} is a loop")
            return Flag(b if v == a else a, e, f, c)
        face = X.face(f)
        if colour == 1:
            i = face.edges.index(e)
            k = len(face)
            # slot i runs from verts[i] to verts[i+1]; the corner at v sits at one of them
            others = []
            if face.verts[i] == v:
                others.append(face.edges[(i - 1) % k])
            if face.verts[(i + 1) % k] == v:
                others.append(face.edges[(i + 1) % k])
            if len(others) != 1:
                raise NonUniqueCoordinateSwap(f"face {f} does not meet vertex {v} in a single corner at edge {e}")
            return Flag(v, others[0], f, c)
        if colour == 2:
            if e in X.frontier:
                raise NonUniqueCoordinateSwap(f"edge {e} lies on the frontier")
            df = DirectedFace(f, self.direction[(f, c)])
            nxt = successor(X, self.sigma, df, face.edges.index(e))
            if nxt.face == f:
                raise NonUniqueCoordinateSwap(f"edge {e} has no second face in pre-chamber {c}")
            return Flag(v, e, nxt.face, c)
        if colour == 3:
            other = self.P.class_of(DirectedFace(f, -self.direction[(f, c)]))
            return Flag(v, e, f, other)
        raise ValueError(colour)


def all_flags(X: TwoComplex, P: PreChamberPartition, vertices: Iterable[int] | None = None) -> list[Flag]:
    keep = None if vertices is None else set(vertices)
    out = []
    for f, face in X.faces.items():
        classes = sorted({P.class_of(DirectedFace(f, 1)), P.class_of(DirectedFace(f, -1))})
        for e in dict.fromkeys(face.edges):
            for v in dict.fromkeys(X.ends(e)):
                if keep is not None and v not in keep:
                    continue
                for c in classes:
                    out.append(Flag(v, e, f, c))
    return sorted(set(out))


def flag_complex(
    X: TwoComplex,
    sigma: RotationSystem,
    vertices: Iterable[int] | None = None,
    partition: PreChamberPartition | None = None,
) -> FlagComplex:
    """The flag complex of ``(X, sigma)``; with ``vertices`` only the flags on those vertices.

    Colour-0 edges leave a vertex, so they are dropped when flags are
    restricted to ``vertices`` and the swap would leave the set.
    """
    if not X.is_edge_regular():
        raise NotEdgeRegular("flag complex needs an edge-regular complex")
    P = partition if partition is not None else prechambers(X, sigma)
    sw = _Swaps(X, sigma, P)
    flags = all_flags(X, P, vertices)
    index = {x: i for i, x in enumerate(flags)}
    colours = [0, 1, 2, 3]
    edges: dict[int, tuple[int, int]] = {}
    edge_colours: dict[int, int] = {}
    edge_of: dict[tuple[int, int, int], int] = {}
    for x in flags:
        for col in colours:
            if vertices is not None and col == 0:
                continue
            y = sw.swap(x, col)
            if y == x:
                raise NonUniqueCoordinateSwap(f"flag {x} is fixed by its colour-{col} swap")
            if y not in index:
                continue
            a, b = index[x], index[y]
            key = (min(a, b), max(a, b), col)
            if key not in edge_of:
                eid = len(edges)
                edges[eid] = (key[0], key[1])
                edge_colours[eid] = col
                edge_of[key] = eid
    used = sorted({edge_colours[e] for e in edges})
    faces: dict[int, Face] = {}
    face_colours: dict[int, tuple[int, int]] = {}
    for ci in range(len(used)):
        for cj in range(ci + 1, len(used)):
            pair = (used[ci], used[cj])
            seen: set[int] = set()
            for x in flags:
                if index[x] in seen:
                    continue
                walk = _alternating_cycle(sw, x, pair, index)
                if walk is None:
                    continue
                verts, es, signs = [], [], []
                for k, (u, col) in enumerate(walk):
                    w = walk[(k + 1) % len(walk)][0]
                    a, b = index[u], index[w]
                    eid = edge_of[(min(a, b), max(a, b), col)]
                    verts.append(a)
                    es.append(eid)
                    signs.append(1 if edges[eid] == (a, b) else -1)
                    seen.add(a)
                fid = len(faces)
                faces[fid] = Face(tuple(verts), tuple(es), tuple(signs))
                face_colours[fid] = pair
    Y = TwoComplex(range(len(flags)), edges, faces)
    return FlagComplex(Y, tuple(flags), edge_colours, face_colours, P)


def _alternating_cycle(sw: _Swaps, start: Flag, pair, index) -> list[tuple[Flag, int]] | None:
    walk = []
    x = start
    k = 0
    while True:
        col = pair[k % 2]
        y = sw.swap(x, col)
        if y not in index:
            return None
        walk.append((x, col))
        x = y
        k += 1
        if x == start and k % 2 == 0:
            return walk
        if k > 4 * len(index):
            raise NonUniqueCoordinateSwap("alternating walk does not close")
