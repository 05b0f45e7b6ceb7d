"""Link graphs of a 2-complex and local connectivity."""

from __future__ import annotations

from typing import NamedTuple

from .complex import TwoComplex
from .errors import UnknownVertex
from .graphs import Multigraph, is_k_connected


class EdgeEnd(NamedTuple):
    edge: int
    end: int  # index into ends(edge)


class Corner(NamedTuple):
    face: int
    index: int  # position of the vertex in the face walk


def corner_ends(X: TwoComplex, f: int, i: int) -> tuple[EdgeEnd, EdgeEnd]:
    """The (incoming, outgoing) edge-ends joined by corner ``i`` of face ``f``."""
    face = X.face(f)
    k = len(face)
    j = (i - 1) % k
    e_in, s_in = face.edges[j], face.signs[j]
    e_out, s_out = face.edges[i], face.signs[i]
    return EdgeEnd(e_in, 1 if s_in > 0 else 0), EdgeEnd(e_out, 0 if s_out > 0 else 1)


def edge_ends_at(X: TwoComplex, v: int) -> list[EdgeEnd]:
    out = []
    for e in X.incident_edges(v):
        a, b = X.ends(e)
        if a == v:
            out.append(EdgeEnd(e, 0))
        if b == v:
            out.append(EdgeEnd(e, 1))
    return sorted(out)


def link_graph(X: TwoComplex, v: int) -> Multigraph:
    """Multigraph on the edge-ends at ``v``, one edge per face corner at ``v``.

    Link edges are keyed by :class:`Corner`.
    """
    if v not in set(X.vertices):
        raise UnknownVertex(v)
    nodes = edge_ends_at(X, v)
    edges = {}
    for f, face in X.faces.items():
        for i, w in enumerate(face.verts):
            if w == v:
                edges[Corner(f, i)] = corner_ends(X, f, i)
    return Multigraph(tuple(nodes), edges)


def is_locally_k_connected(X: TwoComplex, k: int) -> tuple[bool, int | None]:
    """Whether every link graph is k-connected; on failure also the first bad vertex."""
    for v in X.vertices:
        if not is_k_connected(link_graph(X, v), k):
            return False, v
    return True, None
