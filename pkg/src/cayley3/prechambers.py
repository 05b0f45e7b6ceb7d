"""Pre-chambers: classes of directed faces glued by consecutiveness in sigma.

A directed face traversing the directed edge d is followed by the next slot
after it in ``sigma[d]``, taken with the orientation that traverses d
backwards.  Classes are the connected components of this relation.  On a
ball truncation nothing is glued across frontier edges, and any class that
touches the frontier is reported as ``boundary-unresolved``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .complex import DirectedEdge, DirectedFace, Slot, TwoComplex
from .errors import FaceNotSeparating, InconsistentNesting, InvalidRotation, NotEdgeRegular
from .rotation import RotationSystem

CLOSED = "closed"
UNRESOLVED = "boundary-unresolved"


class _UnionFind:
    def __init__(self, items: Iterable[Hashable]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class PreChamber:
    members: tuple[DirectedFace, ...]  # sorted
    status: str
    edges: frozenset[int]
    frontier_edges: frozenset[int] = frozenset()

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def closed(self) -> bool:
        return self.status == CLOSED


@dataclass(frozen=True)
class PreChamberPartition:
    classes: tuple[PreChamber, ...]  # ordered by least member
    index: Mapping[DirectedFace, int] = field(compare=False)

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, df: DirectedFace) -> int:
        return self.index[DirectedFace(*df)]

    @property
    def closed(self) -> list[PreChamber]:
        return [c for c in self.classes if c.closed]

    @property
    def unresolved(self) -> list[PreChamber]:
        return [c for c in self.classes if not c.closed]


def successor(X: TwoComplex, sigma: RotationSystem, df: DirectedFace, i: int) -> DirectedFace:
    """The directed face following ``df`` across the edge at slot ``i``."""
    face = X.face(df.face)
    d = DirectedEdge(face.edges[i], face.signs[i] * df.sign)
    seq = sigma[d]
    k = seq.index(Slot(df.face, i))
    nxt = seq[(k + 1) % len(seq)]
    s = X.face(nxt.face).signs[nxt.index]
    return DirectedFace(nxt.face, -d.sign * s)


def prechambers(X: TwoComplex, sigma: RotationSystem, require_edge_regular: bool = True) -> PreChamberPartition:
    if require_edge_regular and not X.is_edge_regular():
        raise NotEdgeRegular("pre-chambers need every face to meet each edge at most once")
    if sigma.complex is not X and sigma.complex != X:
        raise InvalidRotation("rotation system belongs to a different complex")
    dfs = sorted(X.directed_faces())
    uf = _UnionFind(dfs)
    for df in dfs:
        face = X.face(df.face)
        for i, e in enumerate(face.edges):
            if e in X.frontier:
                continue
            uf.union(df, successor(X, sigma, df, i))
    groups: dict[DirectedFace, list[DirectedFace]] = {}
    for df in dfs:
        groups.setdefault(uf.find(df), []).append(df)
    classes = []
    index = {}
    for members in sorted(groups.values()):
        edges = frozenset(e for df in members for e in X.face(df.face).edges)
        touching = edges & X.frontier
        status = UNRESOLVED if touching else CLOSED
        for df in members:
            index[df] = len(classes)
        classes.append(PreChamber(tuple(members), status, edges, frozenset(touching)))
    return PreChamberPartition(tuple(classes), index)


# finiteness on ball sequences


@dataclass
class RadiusSummary:
    radius: int
    closed: int
    unresolved: int
    unresolved_frontier: tuple[int, ...]  # frontier-edge contacts per unresolved class


@dataclass
class FinitenessReport:
    radii: tuple[int, ...]
    per_radius: list[RadiusSummary]
    certified: dict[frozenset, tuple[int, int]]  # class key -> (first radius, size)
    unresolved_at_all_radii: bool

    @property
    def unresolved_counts(self) -> list[int]:
        return [s.unresolved for s in self.per_radius]


def finiteness_on_balls(
    builder: Callable[[int], tuple[TwoComplex, RotationSystem, Mapping[int, Hashable]]],
    radii: Sequence[int],
) -> FinitenessReport:
    """Certify finite pre-chambers along an increasing sequence of balls.

    ``builder(r)`` returns the radius-r complex, its rotation system, and a
    map from face ids to radius-independent face keys.  A closed class is
    keyed by its set of (face key, orientation); a class certified at one
    radius must reappear unchanged at every larger radius.
    """
    radii = tuple(radii)
    if list(radii) != sorted(set(radii)):
        raise ValueError("radii must be strictly increasing")
    per_radius = []
    certified: dict[frozenset, tuple[int, int]] = {}
    previous_faces: set | None = None
    all_unresolved = True
    for r in radii:
        X, sigma, keys = builder(r)
        faces = {keys[f] for f in X.faces}
        if previous_faces is not None and not previous_faces <= faces:
            raise InconsistentNesting(f"radius {r} does not contain the faces of the previous ball")
        previous_faces = faces
        P = prechambers(X, sigma)
        class_keys = {
            frozenset((keys[df.face], df.sign) for df in c.members): c for c in P.classes
        }
        for key, (r0, size) in certified.items():
            c = class_keys.get(key)
            if c is None or not c.closed:
                raise InconsistentNesting(f"class certified at radius {r0} changed at radius {r}")
        for key, c in class_keys.items():
            if c.closed and key not in certified:
                certified[key] = (r, c.size)
        unresolved = P.unresolved
        if not unresolved:
            all_unresolved = False
        per_radius.append(
            RadiusSummary(r, len(P.closed), len(unresolved), tuple(len(c.frontier_edges) for c in unresolved))
        )
    return FinitenessReport(radii, per_radius, certified, all_unresolved)


# adjacency


@dataclass(frozen=True)
class TightComponents:
    components: tuple[frozenset[int], ...]  # sets of class indices
    adjacency: frozenset[tuple[int, int]]

    def component_of(self, c: int) -> int:
        return next(i for i, comp in enumerate(self.components) if c in comp)


def tight_components(P: PreChamberPartition, X: TwoComplex) -> TightComponents:
    """Classes are adjacent when some face has its two directions in them."""
    adj = set()
    uf = _UnionFind(range(len(P.classes)))
    for f in X.face_ids():
        a, b = P.class_of(DirectedFace(f, 1)), P.class_of(DirectedFace(f, -1))
        if a != b:
            adj.add((min(a, b), max(a, b)))
            uf.union(a, b)
    comps: dict[int, set[int]] = {}
    for c in range(len(P.classes)):
        comps.setdefault(uf.find(c), set()).add(c)
    return TightComponents(tuple(frozenset(s) for s in sorted(comps.values(), key=min)), frozenset(adj))


def excise(sigma: RotationSystem, X: TwoComplex, drop: Iterable[int]) -> RotationSystem:
    drop = set(drop)
    Y = X.without_faces(drop)
    orders = {d: tuple(s for s in seq if s.face not in drop) for d, seq in sigma.items() if d.sign > 0}
    return RotationSystem(Y, {d: s for d, s in orders.items() if s})


def merge_prechambers(X: TwoComplex, sigma: RotationSystem, D: Iterable[int]):
    """Delete the faces ``D``, each of which must separate two classes not yet merged."""
    D = list(D)
    P = prechambers(X, sigma)
    uf = _UnionFind(range(len(P.classes)))
    for f in D:
        a, b = P.class_of(DirectedFace(f, 1)), P.class_of(DirectedFace(f, -1))
        if not uf.union(a, b):
            raise FaceNotSeparating(f"face {f} has both directions in one pre-chamber")
    Y = X.without_faces(D)
    tau = excise(sigma, X, D)
    Q = prechambers(Y, tau)
    assert len(Q) == len(P) - len(D)
    return Y, tau, Q


def greedy_merge_set(P: PreChamberPartition, X: TwoComplex, classes: Iterable[int]) -> list[int]:
    """Faces forming a spanning tree of the adjacency among ``classes``."""
    classes = set(classes)
    uf = _UnionFind(sorted(classes))
    out = []
    for f in X.face_ids():
        a, b = P.class_of(DirectedFace(f, 1)), P.class_of(DirectedFace(f, -1))
        if a in classes and b in classes and a != b and uf.union(a, b):
            out.append(f)
    return out
