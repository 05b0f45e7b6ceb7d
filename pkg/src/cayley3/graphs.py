"""Multigraphs, combinatorial maps and the graph predicates used throughout.

Connectivity, planarity and isomorphism are delegated to networkx; face
tracing of rotation systems is implemented here since it is the core of
the planarity reasoning on link graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import InvalidRotation

Node = Hashable


class Dart(NamedTuple):
    edge: Hashable
    side: int  # 0: leaves ends[0], 1: leaves ends[1]

    def reverse(self) -> "Dart":
        return Dart(self.edge, 1 - self.side)


@dataclass(frozen=True)
class Multigraph:
    nodes: tuple
    edges: Mapping[Hashable, tuple]  # key -> (u, v); loops and parallels allowed

    @classmethod
    def build(cls, nodes: Iterable[Node], edges: Mapping | Iterable) -> "Multigraph":
        if not isinstance(edges, Mapping):
            edges = dict(enumerate(edges))
        nodes = tuple(nodes)
        nset = set(nodes)
        for k, (u, v) in edges.items():
            if u not in nset or v not in nset:
                raise ValueError(f"edge {k!r} has an endpoint outside the node set")
        return cls(nodes, dict(edges))

    def tail(self, d: Dart) -> Node:
        return self.edges[d.edge][d.side]

    def head(self, d: Dart) -> Node:
        return self.edges[d.edge][1 - d.side]

    def darts_at(self) -> dict:
        out: dict = {v: [] for v in self.nodes}
        for k, (u, v) in self.edges.items():
            out[u].append(Dart(k, 0))
            out[v].append(Dart(k, 1))
        return out

    def degree(self, v: Node) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges.values())

    def to_networkx(self, simple: bool = False) -> nx.Graph:
        g = nx.Graph() if simple else nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for u, v in self.edges.values():
            if simple and u == v:
                continue
            g.add_edge(u, v)
        return g

    def components(self) -> list[set]:
        return [set(c) for c in nx.connected_components(self.to_networkx(simple=True))]

    def is_connected(self) -> bool:
        return len(self.nodes) > 0 and len(self.components()) == 1

    def subgraph(self, keep: Iterable[Node]) -> "Multigraph":
        keep = set(keep)
        return Multigraph(
            tuple(v for v in self.nodes if v in keep),
            {k: (u, v) for k, (u, v) in self.edges.items() if u in keep and v in keep},
        )


# -- rotation systems on graphs -------------------------------------------------

Rotation = Mapping[Node, Sequence[Dart]]


def normalize_rotation(g: Multigraph, rotation: Mapping[Node, Sequence]) -> dict:
    """Convert a rotation given by edge keys and/or darts into darts, and validate it.

    Edge keys are accepted for non-loop edges; loops must be given as darts.
    """
    out = {}
    darts = g.darts_at()
    for v in g.nodes:
        seq = []
        for item in rotation.get(v, ()):
            if isinstance(item, Dart):
                d = item
            else:
                u, w = g.edges[item]
                if u == w:
                    raise InvalidRotation(f"loop {item!r} at {v!r} must be given as darts")
                d = Dart(item, 0 if u == v else 1)
            seq.append(d)
        if sorted(map(repr, seq)) != sorted(map(repr, darts[v])):
            raise InvalidRotation(f"rotation at {v!r} is not a cyclic order of its darts")
        out[v] = tuple(seq)
    return out


@dataclass(frozen=True)
class FaceTrace:
    faces: tuple[tuple[Dart, ...], ...]
    num_faces: int  # includes one face per isolated vertex
    vertices: int
    edges: int
    components: int
    genus: int
    component_genera: tuple[int, ...]


def trace_faces(g: Multigraph, rotation: Mapping[Node, Sequence]) -> FaceTrace:
    """Trace the faces of the combinatorial map ``(g, rotation)``.

    The face permutation sends a dart ``d`` to the successor of ``reverse(d)``
    in the rotation at the head of ``d``.  Genus is computed per connected
    component from ``V - E + F = 2 - 2g``.
    """
    rot = normalize_rotation(g, rotation)
    succ = {}
    for v, seq in rot.items():
        for i, d in enumerate(seq):
            succ[d] = seq[(i + 1) % len(seq)]
    seen = set()
    faces = []
    for v in g.nodes:
        for d in rot[v]:
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = succ[x.reverse()]
            faces.append(tuple(cyc))
    comps = g.components()
    where = {v: i for i, c in enumerate(comps) for v in c}
    nv = [0] * len(comps)
    ne = [0] * len(comps)
    nf = [0] * len(comps)
    for v in g.nodes:
        nv[where[v]] += 1
    for u, _ in g.edges.values():
        ne[where[u]] += 1
    for cyc in faces:
        nf[where[g.tail(cyc[0])]] += 1
    for i, c in enumerate(comps):
        if ne[i] == 0:
            nf[i] += 1  # an isolated vertex on the sphere bounds one face
    genera = []
    for i in range(len(comps)):
        chi = nv[i] - ne[i] + nf[i]
        if chi % 2 or chi > 2:
            raise AssertionError("face tracing produced an impossible Euler characteristic")
        genera.append((2 - chi) // 2)
    return FaceTrace(
        faces=tuple(faces),
        num_faces=sum(nf),
        vertices=len(g.nodes),
        edges=len(g.edges),
        components=len(comps),
        genus=sum(genera),
        component_genera=tuple(genera),
    )


def is_planar_rotation(g: Multigraph, rotation: Mapping[Node, Sequence]) -> bool:
    """True iff every component of the map traces genus 0."""
    return all(x == 0 for x in trace_faces(g, rotation).component_genera)


# -- predicates --------------------------------------------------------------------


def is_k_connected(g: Multigraph, k: int) -> bool:
    """More than ``k`` nodes, and connected after deleting any ``k - 1`` of them."""
    if k < 1:
        raise ValueError("k must be positive")
    if len(g.nodes) <= k:
        return False
    simple = g.to_networkx(simple=True)
    if not nx.is_connected(simple):
        return False
    if k == 1:
        return True
    return nx.node_connectivity(simple) >= k


def is_planar(g: Multigraph) -> bool:
    """Exact planarity test (loops and parallel edges never affect planarity)."""
    planar, _ = nx.check_planarity(g.to_networkx(simple=True))
    return planar


def planar_rotation(g: Multigraph) -> dict | None:
    """A genus-0 rotation system for a planar multigraph, or ``None``.

    Parallel edges are placed next to each other; loops are inserted as an
    adjacent pair of darts.
    """
    simple = g.to_networkx(simple=True)
    planar, emb = nx.check_planarity(simple)
    if not planar:
        return None
    between: dict = {}
    loops: dict = {v: [] for v in g.nodes}
    for k, (u, v) in g.edges.items():
        if u == v:
            loops[u].append(k)
        else:
            between.setdefault((u, v), []).append(Dart(k, 0))
            between.setdefault((v, u), []).append(Dart(k, 1))
    rot = {}
    for v in g.nodes:
        seq = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb else []
        for w in nbrs:
            darts = between[(v, w)]
            # parallel copies nest, so at the other end they appear reversed
            if (w, v) in between and repr(v) > repr(w):
                darts = darts[::-1]
            seq.extend(darts)
        for k in loops[v]:
            seq.extend([Dart(k, 0), Dart(k, 1)])
        rot[v] = tuple(seq)
    return rot


def graphs_isomorphic(g: Multigraph, h: Multigraph) -> tuple[bool, dict | None]:
    """Multigraph isomorphism (edge multiplicities and loops respected)."""
    a, b = g.to_networkx(), h.to_networkx()
    if a.number_of_nodes() != b.number_of_nodes() or a.number_of_edges() != b.number_of_edges():
        return False, None
    matcher = isomorphism.MultiGraphMatcher(a, b)
    if matcher.is_isomorphic():
        return True, dict(matcher.mapping)
    return False, None
