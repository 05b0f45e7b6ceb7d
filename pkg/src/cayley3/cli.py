"""Command-line interface: build, check, transform.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 inconclusive
enumeration.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io
from .cayley import cayley_complex
from .errors import CayleyError, InconclusiveEnumeration, InfiniteOrUnknown, ParseError
from .groups import MatrixGroup, model_from_presentation, translation_vector
from .prechambers import prechambers
from .presentation import parse_presentation
from .rotation import check_invariance, is_planar_rotation_system, rotation_from_coordinates
from .subdivision import barycentric_subdivision

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Inputs:
    """Reads input files once and remembers their digests for the report."""

    def __init__(self) -> None:
        self.digests: dict[str, str] = {}

    def text(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        self.digests[Path(path).name] = io.digest(data)
        return data.decode()

    def json(self, path: str):
        return io.loads(self.text(path))


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(io.dumps(doc))
        return
    for line in _text_lines(doc):
        out.write(line + "\n")


def _text_lines(doc, prefix: str = ""):
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                yield f"{prefix}{k}:"
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}{k}: {_scalar(v)}"
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)) and not _flat(item):
                yield f"{prefix}-"
                yield from _text_lines(item, prefix + "  ")
            else:
                yield f"{prefix}- {_scalar(item)}"


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(x)}" for k, x in sorted(v.items()))
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    return "-" if v is None else str(v)


# build


def cmd_build(args, inputs: _Inputs) -> tuple[dict, int]:
    p = parse_presentation(inputs.text(args.presentation))
    model = model_from_presentation(p, args.model)
    radius = args.radius
    if radius is None and isinstance(model, MatrixGroup) and not model.is_finite():
        raise InfiniteOrUnknown("matrix group is infinite or too large; supply --radius")
    X, action = cayley_complex(
        model, p, radius=radius, doubled=args.doubled, duplicate_faces=args.duplicate_faces
    )
    doc = {"complex": io.complex_to_json(X), "action": io.action_to_json(action)}
    if args.rotation == "transport":
        from .standard import transported_planar_rotation

        sigma = transported_planar_rotation(X, action)
        if sigma is None:
            doc["rotation"] = None
        else:
            doc["rotation"] = io.rotation_to_json(sigma)
    elif args.rotation == "coords":
        if not isinstance(model, MatrixGroup):
            raise ParseError("--rotation coords needs a translation matrix model")
        coords = {}
        for v, h in enumerate(action.vertex_handles):
            vec = translation_vector(h)
            coords[v] = tuple(vec) + (0,) * (3 - len(vec))
        doc["rotation"] = io.rotation_to_json(rotation_from_coordinates(X, coords))
    return doc, EXIT_OK


# check


def check_report(X, sigma, action=None) -> tuple[dict, bool]:
    interior = [v for v in X.vertices if not any(e in X.frontier for e in X.incident_edges(v))]
    planar, bad = is_planar_rotation_system(X, sigma, interior)
    report: dict = {
        "counts": dict(zip(("vertices", "edges", "faces"), X.counts())),
        "planar": {"value": planar, "checked_links": len(interior), "failing_vertex": bad},
    }
    ok = planar
    if action is not None:
        cert = check_invariance(X, sigma, action)
        inv = {"value": cert.invariant, "eta": cert.eta}
        if not cert.invariant:
            inv["reason"] = cert.reason
            if cert.witness:
                inv["witness"] = {
                    "generator": cert.witness[0],
                    "edge": cert.witness[1].key(),
                    "image": cert.witness[2].key(),
                }
        report["invariant"] = inv
        ok = ok and cert.invariant
    P = prechambers(X, sigma)
    classes = [
        {
            "least_member": list(c.members[0]),
            "size": c.size,
            "status": c.status,
            "edges": len(c.edges),
            "frontier_edges": len(c.frontier_edges),
        }
        for c in P.classes
    ]
    report["prechambers"] = {"classes": classes, "closed": len(P.closed), "unresolved": len(P.unresolved)}
    return report, ok


def cmd_check(args, inputs: _Inputs) -> tuple[dict, int]:
    cdoc = inputs.json(args.complex)
    X = io.complex_from_json(cdoc)
    rdoc = inputs.json(args.rotation) if args.rotation else cdoc
    if "rotation" in rdoc and rdoc["rotation"] is None:
        raise ParseError("no rotation system given")
    sigma = io.rotation_from_json(X, rdoc)
    action = None
    if args.action:
        action = io.action_from_json(X, inputs.json(args.action))
    elif "action" in cdoc:
        action = io.action_from_json(X, cdoc["action"])
    report, ok = check_report(X, sigma, action)
    return report, EXIT_OK if ok else EXIT_NEGATIVE


# transform


def cmd_transform(args, inputs: _Inputs) -> tuple[dict, int]:
    which = args.which
    data = inputs.json(args.input)
    if which == "subdivide":
        X = io.complex_from_json(data)
        return {"complex": io.complex_to_json(barycentric_subdivision(X))}, EXIT_OK
    if which == "fatten":
        from .constructions.fatten import fatten_complex, fatten_plane_graph

        if "rotation" in data and "faces" not in data and "complex" not in data:
            g, rot = io.plane_graph_from_json(data)
            P = fatten_plane_graph(g, rot)
            return {"plane_graph": io.plane_graph_to_json(P.graph, P.rotation)}, EXIT_OK
        X = io.complex_from_json(data)
        sigma = io.rotation_from_json(X, inputs.json(args.extra) if args.extra else data)
        action = io.action_from_json(X, inputs.json(args.action)) if args.action else None
        F = fatten_complex(X, sigma, action)
        doc = {"complex": io.complex_to_json(F.complex), "rotation": io.rotation_to_json(F.rotation)}
        if F.action is not None:
            doc["action"] = io.action_to_json(F.action)
        return doc, EXIT_OK
    if which == "flag":
        from .constructions.flags import flag_complex

        X = io.complex_from_json(data)
        sigma = io.rotation_from_json(X, inputs.json(args.extra) if args.extra else data)
        F = flag_complex(X, sigma, vertices=args.vertex)
        doc = {
            "complex": io.complex_to_json(F.complex),
            "flags": [list(x) for x in F.flags],
            "edge_colours": [F.edge_colours[e] for e in sorted(F.edge_colours)],
            "face_colours": [list(F.face_colours[f]) for f in sorted(F.face_colours)],
        }
        return doc, EXIT_OK
    if which == "contract":
        from .constructions.babai import babai_contract

        if not args.extra:
            raise ParseError("contract needs an action file")
        X = io.complex_from_json(data)
        action = io.action_from_json(X, inputs.json(args.extra))
        c = babai_contract(X, action)
        return {
            "domain": list(c.domain),
            "tree": list(c.tree),
            "complex": io.complex_to_json(c.complex),
            "action": io.action_to_json(c.action),
            "regular_on_vertices": c.action.regular_on_vertices,
        }, EXIT_OK
    raise ParseError(f"unknown transform {which!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="cayley3", description="Cayley complexes, rotation systems and pre-chambers")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a Cayley complex from a presentation file")
    b.add_argument("presentation")
    b.add_argument("--model", choices=("coset", "permutation", "matrix"), default="coset")
    b.add_argument("--radius", type=int)
    b.add_argument("--doubled", action="store_true", help="one edge per (g, s) even for involutions")
    b.add_argument("--duplicate-faces", action="store_true", help="one face per relator walk")
    b.add_argument(
        "--rotation",
        choices=("none", "transport", "coords"),
        default="none",
        help="also emit an invariant planar rotation system",
    )

    c = sub.add_parser("check", parents=[common], help="check planarity, invariance and pre-chambers")
    c.add_argument("complex")
    c.add_argument("rotation", nargs="?")
    c.add_argument("--action")

    t = sub.add_parser("transform", parents=[common], help="apply a construction")
    t.add_argument("which", choices=("subdivide", "fatten", "flag", "contract"))
    t.add_argument("input")
    t.add_argument("extra", nargs="?", help="rotation file (fatten, flag) or action file (contract)")
    t.add_argument("--action")
    t.add_argument("--vertex", type=int, action="append", help="restrict flags to these vertices")
    return parser


COMMANDS = {"build": cmd_build, "check": cmd_check, "transform": cmd_transform}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        body, code = COMMANDS[args.command](args, inputs)
    except (InconclusiveEnumeration, InfiniteOrUnknown) as exc:
        stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (CayleyError, ValueError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    doc = {"command": args.command, "inputs": dict(sorted(inputs.digests.items()))}
    doc.update(body)
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - start, 6)
    if args.output:
        with open(args.output, "w") as fh:
            _emit(doc, args.format, fh)
    else:
        _emit(doc, args.format, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
