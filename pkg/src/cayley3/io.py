"""JSON formats for complexes, rotation systems, actions and reports.

All writers produce canonical JSON (sorted keys, ids in increasing order)
so that identical inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .action import CellMap, CellularAction, action_from_vertex_maps
from .complex import DirectedEdge, Face, Slot, TwoComplex
from .errors import InvalidComplex, ParseError
from .graphs import Dart, Multigraph
from .rotation import RotationSystem


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# complexes


def complex_to_json(X: TwoComplex) -> dict:
    faces = []
    for f, face in X.faces.items():
        entry: dict[str, Any] = {"id": f, "walk": face.walk()}
        if any(X.ends(e)[0] == X.ends(e)[1] and s < 0 for e, s in zip(face.edges, face.signs)):
            # a loop's direction is not implied by the walk
            entry["signs"] = list(face.signs)
        faces.append(entry)
    out = {
        "vertices": list(X.vertices),
        "edges": [{"id": e, "ends": list(ends)} for e, ends in X.edges.items()],
        "faces": faces,
    }
    if X.frontier:
        out["frontier"] = sorted(X.frontier)
    return out


def complex_from_json(data: dict) -> TwoComplex:
    try:
        if "complex" in data and "vertices" not in data:
            data = data["complex"]
        edges = {}
        for item in data["edges"]:
            e = int(item["id"])
            if e in edges:
                raise InvalidComplex(f"duplicate edge id {e}")
            a, b = item["ends"]
            edges[e] = (int(a), int(b))
        faces: dict[int, Any] = {}
        for item in data.get("faces", []):
            f = int(item["id"])
            if f in faces:
                raise InvalidComplex(f"duplicate face id {f}")
            walk = [int(x) for x in item["walk"]]
            if "signs" in item:
                faces[f] = Face(tuple(walk[0::2]), tuple(walk[1::2]), tuple(int(s) for s in item["signs"]))
            else:
                faces[f] = walk
        return TwoComplex([int(v) for v in data["vertices"]], edges, faces, data.get("frontier", ()))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidComplex):
            raise
        raise ParseError(f"malformed complex JSON: {exc!r}") from exc


# rotation systems


def rotation_to_json(sigma: RotationSystem) -> dict:
    return {DirectedEdge(*d).key(): [list(s) for s in sigma[d]] for d in sigma}


def rotation_from_json(X: TwoComplex, data: dict) -> RotationSystem:
    try:
        if "rotation" in data and isinstance(data["rotation"], dict):
            data = data["rotation"]
        orders = {}
        for key, seq in data.items():
            orders[DirectedEdge.from_key(key)] = tuple(Slot(int(f), int(i)) for f, i in seq)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed rotation JSON: {exc!r}") from exc
    return RotationSystem(X, orders)


# actions


def action_to_json(action: CellularAction) -> dict:
    maps = {}
    for name in action.generators:
        m = action.maps[name]
        maps[name] = {
            "vertices": [[v, w] for v, w in sorted(m.vertices.items())],
            "edges": [[e, t[0], t[1]] for e, t in sorted(m.edges.items())],
            "faces": [[f, t[0], t[1], bool(t[2])] for f, t in sorted(m.faces.items())],
        }
    out = {
        "generators": list(action.generators),
        "relators": [list(r) for r in action.relators],
        "maps": maps,
    }
    if action.partial:
        out["partial"] = True
    return out


def action_from_json(X: TwoComplex, data: dict) -> CellularAction:
    try:
        if "action" in data and "generators" not in data:
            data = data["action"]
        gens = tuple(data["generators"])
        relators = tuple(tuple(int(x) for x in r) for r in data.get("relators", []))
        raw = data["maps"]
        if all("edges" not in raw[g] for g in gens):
            vmaps = {g: {int(v): int(w) for v, w in raw[g]["vertices"]} for g in gens}
            return action_from_vertex_maps(X, vmaps, relators)
        maps = {}
        for g in gens:
            r = raw[g]
            maps[g] = CellMap(
                {int(v): int(w) for v, w in r["vertices"]},
                {int(e): (int(e1), int(fl)) for e, e1, fl in r["edges"]},
                {int(f): (int(f1), int(o), bool(rv)) for f, f1, o, rv in r.get("faces", [])},
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed action JSON: {exc!r}") from exc
    return CellularAction(X, gens, maps, relators, partial=bool(data.get("partial", False)))


# plane graphs


def plane_graph_from_json(data: dict) -> tuple[Multigraph, dict]:
    """A graph with a rotation: ``{"vertices", "edges", "rotation": {v: [[edge, side], ...]}}``."""
    try:
        nodes = [int(v) for v in data["vertices"]]
        edges = {int(item["id"]): (int(item["ends"][0]), int(item["ends"][1])) for item in data["edges"]}
        rot = {int(v): [Dart(int(e), int(s)) for e, s in seq] for v, seq in data["rotation"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed plane graph JSON: {exc!r}") from exc
    return Multigraph(tuple(nodes), edges), rot


def plane_graph_to_json(g: Multigraph, rotation: dict) -> dict:
    """Relabel nodes and edges by consecutive ints in canonical (repr-sorted) order."""
    nodes = sorted(g.nodes, key=repr)
    nid = {v: i for i, v in enumerate(nodes)}
    keys = sorted(g.edges, key=repr)
    eid = {k: i for i, k in enumerate(keys)}
    return {
        "vertices": list(range(len(nodes))),
        "edges": [{"id": eid[k], "ends": [nid[g.edges[k][0]], nid[g.edges[k][1]]]} for k in keys],
        "rotation": {str(nid[v]): [[eid[d.edge], d.side] for d in rotation[v]] for v in nodes},
    }
