import io as stdio
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cayley3 import io
from cayley3.cli import main
from cayley3.complex import Face, TwoComplex
from cayley3.errors import ParseError
from cayley3.rotation import rotation_from_coordinates
from cayley3.standard import tetrahedron, torus_complex

FIX = Path(__file__).parent / "fixtures"


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = run(*argv)
    return code, (json.loads(out) if out else None), err


# serialisation


def test_complex_round_trip_with_loops():
    X = TwoComplex([0, 1], {0: (0, 1), 1: (1, 1)}, {0: Face((1,), (1,), (-1,))}, frontier=[0])
    Y = io.complex_from_json(io.loads(io.dumps(io.complex_to_json(X))))
    assert Y == X and Y.frontier == X.frontier
    assert Y.face(0).signs == (-1,)


def test_rotation_and_action_round_trip():
    X, action, sigma = torus_complex()
    doc = json.loads(io.dumps({"rotation": io.rotation_to_json(sigma), "action": io.action_to_json(action)}))
    assert io.rotation_from_json(X, doc) == sigma
    back = io.action_from_json(X, doc["action"])
    assert back.generators == action.generators
    assert all(back.maps[g] == action.maps[g] for g in action.generators)
    assert back.regular_on_vertices


def test_vertex_only_action():
    X, _ = tetrahedron()
    act = io.action_from_json(X, {"generators": ["s"], "maps": {"s": {"vertices": [[0, 1], [1, 0], [2, 3], [3, 2]]}}, "relators": [[1, 1]]})
    assert act.certificate().incidence


def test_dumps_is_deterministic():
    X, coords = tetrahedron()
    a = io.dumps(io.rotation_to_json(rotation_from_coordinates(X, coords)))
    b = io.dumps(io.rotation_to_json(rotation_from_coordinates(*tetrahedron())))
    assert a == b and io.digest(a) == io.digest(b)


def test_loads_errors():
    with pytest.raises(ParseError):
        io.loads("{not json")
    with pytest.raises(Exception):
        io.complex_from_json({"vertices": [0], "edges": {"0": [0, 5]}, "faces": {}})


# command line


def test_build_torus():
    code, doc, _ = report("build", FIX / "torus33.grp", "--rotation", "transport")
    assert code == 0
    assert doc["command"] == "build"
    assert len(doc["inputs"]) == 1
    assert doc["rotation"] is not None
    assert len(doc["complex"]["vertices"]) == 9


def test_build_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("build", FIX / "torus33.grp", "--rotation", "transport", "-o", a)[0] == 0
    assert run("build", FIX / "torus33.grp", "--rotation", "transport", "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() == (FIX / "torus33.json").read_bytes()


def test_check_torus():
    code, doc, _ = report("check", FIX / "torus33.json")
    assert code == 0
    assert doc["planar"] == {"value": True, "checked_links": 9, "failing_vertex": None}
    assert doc["invariant"]["eta"] == {"a": 0, "b": 0}
    assert doc["prechambers"]["unresolved"] == 0


def test_check_z2_ball():
    code, doc, _ = report("check", FIX / "z2-r3.json")
    assert code == 0
    assert doc["planar"]["value"] and doc["invariant"]["value"]
    assert (doc["prechambers"]["closed"], doc["prechambers"]["unresolved"]) == (0, 2)


def test_check_spheres_text_format():
    code, out, _ = run("check", FIX / "cube.json", FIX / "cube.rot", "--format", "text")
    assert code == 0
    assert "closed" in out


def test_check_broken_rotation_is_input_error():
    code, _, err = run("check", FIX / "torus33.json", FIX / "torus33-broken.rot")
    assert code == 2 and err.startswith("error")


def test_exit_codes(monkeypatch):
    assert run("build", FIX / "bad.grp")[0] == 2
    assert run("build", FIX / "missing.grp")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("build", FIX / "z2.grp", "--model", "matrix")[0] == 3
    monkeypatch.setenv("CAYLEY3_COSET_LIMIT", "500")
    assert run("build", FIX / "z2.grp")[0] == 3


def test_permutation_model_build():
    code, doc, _ = report("build", FIX / "s3perm.grp", "--model", "permutation")
    assert code == 0 and len(doc["complex"]["vertices"]) == 6


def test_transforms(tmp_path):
    code, doc, _ = report("transform", "flag", FIX / "tetra.json", FIX / "tetra.rot")
    assert code == 0 and len(doc["flags"]) == 48
    code, doc, _ = report("transform", "fatten", FIX / "k2-plane.json")
    g = doc["plane_graph"]
    assert code == 0 and (len(g["vertices"]), len(g["edges"])) == (8, 15)
    code, doc, _ = report("transform", "contract", FIX / "c6.json", FIX / "antipodal.act")
    assert code == 0 and doc["regular_on_vertices"] and doc["domain"] == [0, 1, 5]
    code, doc, _ = report("transform", "subdivide", FIX / "tetra.json")
    assert code == 0 and len(doc["complex"]["vertices"]) == 14
    code, doc, _ = report("transform", "fatten", FIX / "tetra.json", FIX / "tetra.rot")
    assert code == 0 and len(doc["complex"]["edges"]) == 42


def test_timing_flag():
    code, doc, _ = report("build", FIX / "torus33.grp", "--timing")
    assert code == 0 and doc["seconds"] >= 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cayley3", "build", str(FIX / "bad.grp")], capture_output=True, text=True
    )
    assert proc.returncode == 2
