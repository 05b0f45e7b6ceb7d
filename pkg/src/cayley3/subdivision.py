"""Barycentric subdivision of 2-complexes."""

from __future__ import annotations

from .complex import Face, TwoComplex


def _subdivide_once(X: TwoComplex) -> TwoComplex:
    next_id = max(X.vertices, default=-1) + 1
    mid = {}
    for e in X.edge_ids():
        mid[e] = next_id
        next_id += 1
    centre = {}
    for f in X.face_ids():
        centre[f] = next_id
        next_id += 1

    edges: dict[int, tuple[int, int]] = {}
    half = {}
    for e, (a, b) in X.edges.items():
        # half (e, 0) is ends[0]-mid, half (e, 1) is mid-ends[1]
        half[(e, 0)] = len(edges)
        edges[len(edges)] = (a, mid[e])
        half[(e, 1)] = len(edges)
        edges[len(edges)] = (mid[e], b)

    faces: dict[int, Face] = {}
    for f, face in X.faces.items():
        c = centre[f]
        # walk along the subdivided boundary: (vertex, edge, sign) steps
        steps = []
        for v, e, s in zip(face.verts, face.edges, face.signs):
            first, second = ((e, 0), (e, 1)) if s > 0 else ((e, 1), (e, 0))
            steps.append((v, half[first], s))
            steps.append((mid[e], half[second], s))
        # one spoke per occurrence of a boundary vertex
        spokes = []
        for x, _, _ in steps:
            spokes.append(len(edges))
            edges[len(edges)] = (c, x)
        n = len(steps)
        for i, (x, be, s) in enumerate(steps):
            y = steps[(i + 1) % n][0]
            faces[len(faces)] = Face(
                (c, x, y),
                (spokes[i], be, spokes[(i + 1) % n]),
                (1, s, -1),
            )
    verts = list(X.vertices) + list(mid.values()) + list(centre.values())
    return TwoComplex(verts, edges, faces)


def barycentric_subdivision(X: TwoComplex) -> TwoComplex:
    """Subdivide every edge at its midpoint and cone every face from a centre.

    One round already yields a simplicial complex when ``X`` is regular and
    loopless.  Otherwise (loops, repeated vertices or edges in a walk) one
    round leaves parallel edges, and a second round is applied so that the
    output is always simplicial.
    """
    Y = _subdivide_once(X)
    if not Y.is_simplicial():
        Y = _subdivide_once(Y)
    return Y
