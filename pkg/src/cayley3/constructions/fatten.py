"""Fattening of plane graphs and of 2-complexes.

``fatten_plane_graph`` triples every edge, subdivides each copy twice and
rings every original vertex, giving a 2-connected plane graph.
``fatten_complex`` does the same to every link graph at once: each face is
tripled, each edge gets one arc per face copy, and consecutive arcs around
an edge bound a slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..action import CellMap, CellularAction, face_map_from_edges
from ..complex import DirectedEdge, Face, Slot, TwoComplex
from ..errors import InvarianceRequired, NotLocallyConnected, NotEdgeRegular, NotPlane
from ..graphs import Dart, Multigraph, normalize_rotation, trace_faces
from ..links import is_locally_k_connected
from ..rotation import RotationSystem, check_invariance


@dataclass(frozen=True)
class PlaneGraph:
    graph: Multigraph
    rotation: Mapping  # node -> tuple of darts

    def __post_init__(self) -> None:
        if not self.graph.is_connected():
            raise NotPlane("plane graph must be connected")
        rot = normalize_rotation(self.graph, self.rotation)
        object.__setattr__(self, "rotation", rot)
        if trace_faces(self.graph, rot).genus != 0:
            raise NotPlane("rotation system does not have genus 0")


COPIES = ("-", "0", "+")


def fatten_plane_graph(G: PlaneGraph | Multigraph, rotation: Mapping | None = None) -> PlaneGraph:
    """The fattened plane graph; has V + 6E vertices and 15E edges."""
    if not isinstance(G, PlaneGraph):
        G = PlaneGraph(G, rotation)
    g, rot = G.graph, G.rotation
    nodes = list(g.nodes)
    edges: dict = {}
    # rotation of the tripled graph: at a dart leaving ends[0] the copies run - 0 +,
    # at ends[1] they run + 0 -, so that e' and e'' enclose e
    tripled: dict = {}
    for v, seq in rot.items():
        out = []
        for d in seq:
            order = COPIES if d.side == 0 else COPIES[::-1]
            out.extend((d.edge, c, d.side) for c in order)
        tripled[v] = out

    def x(item):
        return ("x",) + item

    for k, (u, w) in g.edges.items():
        for c in COPIES:
            nodes.extend([x((k, c, 0)), x((k, c, 1))])
            edges[("s", k, c, 0)] = (u, x((k, c, 0)))
            edges[("m", k, c)] = (x((k, c, 0)), x((k, c, 1)))
            edges[("s", k, c, 1)] = (w, x((k, c, 1)))
    new_rot: dict = {}
    for v, seq in tripled.items():
        m = len(seq)
        new_rot[v] = tuple(Dart(("s", k, c, side), 0) for k, c, side in seq)
        for i in range(m):
            edges[("r", v, i)] = (x(seq[i]), x(seq[(i + 1) % m]))
        for i, (k, c, side) in enumerate(seq):
            new_rot[x((k, c, side))] = (
                Dart(("m", k, c), side),
                Dart(("r", v, i), 0),
                Dart(("s", k, c, side), 1),
                Dart(("r", v, (i - 1) % m), 1),
            )
    return PlaneGraph(Multigraph(tuple(nodes), edges), new_rot)


# complexes


@dataclass
class FattenedComplex:
    complex: TwoComplex
    rotation: RotationSystem
    action: CellularAction | None
    copies: dict  # face id of X' -> description tuple
    arcs: dict  # edge id of X' -> (face, copy, slot index)


def _copy_order(sign: int) -> tuple[int, ...]:
    return (-1, 0, 1) if sign > 0 else (1, 0, -1)


def fatten_complex(
    X: TwoComplex,
    sigma: RotationSystem,
    action: CellularAction | None = None,
    eta: Mapping[str, int] | None = None,
) -> FattenedComplex:
    """Locally 2-connected fattening of a locally 1-connected complex.

    Keeps vertices and edges of ``X``; every face becomes three copies, each
    replaced by lunes along its edges and a central face on its arcs.
    Slices fill the gaps between consecutive arcs around an edge.
    """
    if not X.is_edge_regular():
        raise NotEdgeRegular("fattening needs an edge-regular complex")
    ok, bad = is_locally_k_connected(X, 1)
    if not ok:
        raise NotLocallyConnected(f"link at vertex {bad} is disconnected")
    if action is not None and action.generators:
        cert = check_invariance(X, sigma, action)
        if not cert.invariant:
            raise InvarianceRequired(f"rotation system is not invariant: {cert.reason}")
        if eta is None:
            eta = cert.eta
    eta = dict(eta or {})

    edges = dict(X.edges)
    next_edge = max(edges, default=-1) + 1
    arc: dict[tuple[int, int, int], int] = {}  # (face, copy, slot) -> edge id
    arcs_info = {}
    for f, face in X.faces.items():
        for t in (-1, 0, 1):
            for i, e in enumerate(face.edges):
                arc[(f, t, i)] = next_edge
                arcs_info[next_edge] = (f, t, i)
                edges[next_edge] = X.ends(e)
                next_edge += 1

    faces: dict[int, Face] = {}
    info: dict[int, tuple] = {}
    lune: dict[tuple[int, int, int], int] = {}
    central: dict[tuple[int, int], int] = {}
    slice_id: dict[tuple, int] = {}

    def add(face: Face, desc: tuple) -> int:
        fid = len(faces)
        faces[fid] = face
        info[fid] = desc
        return fid

    for f, face in X.faces.items():
        for t in (-1, 0, 1):
            for i, e in enumerate(face.edges):
                a, b = X.ends(e)
                lune[(f, t, i)] = add(Face((a, b), (e, arc[(f, t, i)]), (1, -1)), ("lune", f, t, i))
            central[(f, t)] = add(
                Face(face.verts, tuple(arc[(f, t, i)] for i in range(len(face))), face.signs), ("central", f, t)
            )

    orders: dict[DirectedEdge, tuple[Slot, ...]] = {}
    for e in X.edge_ids():
        d = DirectedEdge(e, 1)
        if d not in sigma:
            continue
        a, b = X.ends(e)
        seq = []
        for s in sigma[d]:
            sign = X.face(s.face).signs[s.index]
            seq.extend((s.face, t, s.index) for t in _copy_order(sign))
        orders[d] = tuple(Slot(lune[c], 0) for c in seq)
        m = len(seq)
        for j in range(m):
            c1, c2 = seq[j], seq[(j + 1) % m]
            slice_id[(c1, c2)] = add(Face((a, b), (arc[c1], arc[c2]), (1, -1)), ("slice", e, c1, c2))
        for j, c in enumerate(seq):
            prev, nxt = seq[(j - 1) % m], seq[(j + 1) % m]
            f, t, i = c
            orders[DirectedEdge(arc[c], 1)] = (
                Slot(central[(f, t)], i),
                Slot(slice_id[(c, nxt)], 0),
                Slot(lune[c], 1),
                Slot(slice_id[(prev, c)], 1),
            )

    Y = TwoComplex(X.vertices, edges, faces, frontier=X.frontier)
    tau = RotationSystem(Y, orders)
    new_action = None
    if action is not None:
        new_action = _extend_action(X, Y, action, eta, arc, arcs_info)
    return FattenedComplex(Y, tau, new_action, info, arcs_info)


def _extend_action(X, Y, action: CellularAction, eta, arc, arcs_info) -> CellularAction:
    maps = {}
    for name in action.generators:
        m = action.maps[name]
        flip_copies = eta.get(name, 0)
        edges = dict(m.edges)
        for a_id, (f, t, i) in arcs_info.items():
            if f not in m.faces or X.face(f).edges[i] not in m.edges:
                continue
            g, _, rev = m.faces[f]
            swap = rev != bool(flip_copies)
            t2 = -t if swap else t
            j = m.slot(X, Slot(f, i)).index
            edges[a_id] = (arc[(g, t2, j)], m.edges[X.face(f).edges[i]][1])
        faces = face_map_from_edges(Y, m.vertices, edges)
        maps[name] = CellMap(dict(m.vertices), edges, faces)
    return CellularAction(
        Y,
        action.generators,
        maps,
        action.relators,
        model=action.model,
        partial=action.partial,
        vertex_handles=action.vertex_handles,
    )
