"""Regenerate the JSON fixtures under tests/fixtures (run from the repo root).

torus33.json and z2-r3.json come from the CLI:

    cayley3 build tests/fixtures/torus33.grp --rotation transport -o tests/fixtures/torus33.json
    cayley3 build tests/fixtures/z2.grp --model matrix --radius 3 --rotation coords -o tests/fixtures/z2-r3.json
"""

from pathlib import Path

from cayley3 import io
from cayley3.complex import graph_complex
from cayley3.rotation import rotation_from_coordinates
from cayley3.standard import cube, tetrahedron

OUT = Path(__file__).parent / "fixtures"


def write(name, doc):
    (OUT / name).write_text(io.dumps(doc))


def main():
    X, coords = tetrahedron()
    write("tetra.json", io.complex_to_json(X))
    write("tetra.rot", io.rotation_to_json(rotation_from_coordinates(X, coords)))
    X, coords = cube()
    write("cube.json", io.complex_to_json(X))
    write("cube.rot", io.rotation_to_json(rotation_from_coordinates(X, coords)))
    write(
        "k2-plane.json",
        {"vertices": [0, 1], "edges": [{"id": 0, "ends": [0, 1]}], "rotation": {"0": [[0, 0]], "1": [[0, 1]]}},
    )
    C6 = graph_complex(range(6), [(i, (i + 1) % 6) for i in range(6)])
    write("c6.json", io.complex_to_json(C6))
    write(
        "antipodal.act",
        {"generators": ["t"], "relators": [[1, 1]], "maps": {"t": {"vertices": [[i, (i + 3) % 6] for i in range(6)]}}},
    )
    torus = io.loads((OUT / "torus33.json").read_text())
    broken = dict(torus["rotation"])
    key = next(k for k in sorted(broken) if k.endswith("-"))
    seq = broken[key]
    broken[key] = [seq[1], seq[0]] + seq[2:]
    write("torus33-broken.rot", broken)

if __name__ == "__main__":
    main()
