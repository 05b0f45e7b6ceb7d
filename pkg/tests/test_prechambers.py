import pytest

from cayley3.complex import DirectedEdge, TwoComplex, complex_from_cycles
from cayley3.errors import FaceNotSeparating, InconsistentNesting, NotEdgeRegular
from cayley3.prechambers import (
    excise,
    finiteness_on_balls,
    greedy_merge_set,
    merge_prechambers,
    prechambers,
    tight_components,
)
from cayley3.rotation import RotationSystem, rotation_from_coordinates, rotation_from_positive
from cayley3.standard import cube, lattice_ball, tetrahedron, torus_complex, triangle
from oracles import prechamber_classes


def plain(X, sigma):
    faces = {f: list(zip(face.edges, face.signs)) for f, face in X.faces.items()}
    sig = {(d.edge, d.sign): [tuple(s) for s in seq] for d, seq in sigma.items()}
    return faces, sig


def library_classes(P):
    return sorted(sorted((df.face, df.sign) for df in c.members) for c in P.classes)


def sphere(build):
    X, coords = build()
    return X, rotation_from_coordinates(X, coords)


@pytest.mark.parametrize("build,size", [(tetrahedron, 4), (cube, 6)])
def test_sphere_corpus(build, size):
    X, sigma = sphere(build)
    P = prechambers(X, sigma)
    assert [c.size for c in P.classes] == [size, size]
    assert all(c.closed for c in P.classes)
    v, e, f = X.counts()
    assert v - e + f - len(P) == 0
    assert library_classes(P) == prechamber_classes(*plain(X, sigma))


def test_disc_has_one_class():
    X = triangle()
    sigma = rotation_from_positive(X, {e: X.slots(e) for e in X.edge_ids()})
    P = prechambers(X, sigma)
    assert [c.size for c in P.classes] == [2]


def test_torus_classes_match_oracle():
    X, _, sigma = torus_complex()
    P = prechambers(X, sigma)
    assert all(c.closed for c in P.classes)
    assert sum(c.size for c in P.classes) == 2 * len(X.faces)
    assert library_classes(P) == prechamber_classes(*plain(X, sigma))


@pytest.mark.parametrize("radius", [2, 3, 4])
def test_z2_balls_have_two_unresolved_classes(radius):
    X, _, coords = lattice_ball(2, radius)
    sigma = rotation_from_coordinates(X, coords)
    P = prechambers(X, sigma)
    assert len(P.unresolved) == 2 and not P.closed
    assert library_classes(P) == prechamber_classes(*plain(X, sigma), X.frontier)


@pytest.fixture(scope="module")
def z3():
    X, action, coords = lattice_ball(3, 4)
    return X, action, rotation_from_coordinates(X, coords)


def test_z3_closed_cubes(z3):
    X, _, sigma = z3
    P = prechambers(X, sigma)
    assert len(P.closed) == 8
    assert all(c.size == 6 for c in P.closed)
    assert library_classes(P) == prechamber_classes(*plain(X, sigma), X.frontier)


def test_z3_closed_cubes_form_one_tight_component(z3):
    X, _, sigma = z3
    P = prechambers(X, sigma)
    T = tight_components(P, X)
    closed = {i for i, c in enumerate(P.classes) if c.closed}
    assert len({T.component_of(c) for c in closed}) == 1


def test_z3_greedy_merge(z3):
    X, _, sigma = z3
    P = prechambers(X, sigma)
    closed = [i for i, c in enumerate(P.classes) if c.closed]
    D = greedy_merge_set(P, X, closed)
    assert len(D) == len(closed) - 1
    Y, tau, Q = merge_prechambers(X, sigma, D)
    assert len(Q) == len(P) - len(D)
    assert len(Q.closed) == 1


def lattice_builder(dim):
    def build(r):
        X, action, coords = lattice_ball(dim, r)
        sigma = rotation_from_coordinates(X, coords)
        keys = {}
        for f, face in X.faces.items():
            keys[f] = tuple(sorted(str(action.vertex_handles[v]) for v in face.verts))
        return X, sigma, keys

    return build


def test_finiteness_on_z2_balls():
    report = finiteness_on_balls(lattice_builder(2), [2, 3, 4])
    assert report.unresolved_counts == [2, 2, 2]
    assert not report.certified
    assert report.unresolved_at_all_radii


def test_finiteness_on_z3_balls():
    report = finiteness_on_balls(lattice_builder(3), [1, 2, 3, 4])
    assert [s.closed for s in report.per_radius] == [0, 0, 0, 8]
    assert sorted(size for _, size in report.certified.values()) == [6] * 8


def test_inconsistent_nesting():
    build = lattice_builder(2)
    with pytest.raises(InconsistentNesting):
        finiteness_on_balls(lambda r: build(5 - r), [1, 2])
    with pytest.raises(ValueError):
        finiteness_on_balls(build, [3, 2])


def test_tetrahedron_tight_components():
    X, sigma = sphere(tetrahedron)
    P = prechambers(X, sigma)
    T = tight_components(P, X)
    assert T.components == (frozenset({0, 1}),)
    assert T.adjacency == frozenset({(0, 1)})


@pytest.mark.parametrize("build", [tetrahedron, cube])
def test_merge_one_face(build):
    X, sigma = sphere(build)
    Y, tau, Q = merge_prechambers(X, sigma, [0])
    assert len(Q) == 1
    assert len(Y.faces) == len(X.faces) - 1
    Y2, tau2, Q2 = merge_prechambers(X, sigma, [])
    assert len(Q2) == 2


def test_merge_refuses_non_separating_face():
    X, sigma = sphere(cube)
    Y, tau, _ = merge_prechambers(X, sigma, [0])
    with pytest.raises(FaceNotSeparating):
        merge_prechambers(Y, tau, [next(iter(Y.face_ids()))])


def test_excise_contracts_orders():
    X, sigma = sphere(cube)
    tau = excise(sigma, X, [0])
    for d, seq in tau.items():
        assert all(s.face != 0 for s in seq)
        assert len(seq) == len(sigma[d]) - (1 if any(s.face == 0 for s in sigma[d]) else 0)


def test_relabelling_invariance():
    X, sigma = sphere(cube)
    vmap = {v: 100 - v for v in X.vertices}
    emap = {e: 50 - e for e in X.edge_ids()}
    fmap = {f: 20 - f for f in X.face_ids()}
    Y = X.relabelled(vmap, emap, fmap)
    orders = {
        DirectedEdge(emap[d.edge], d.sign): [(fmap[s.face], s.index) for s in seq]
        for d, seq in sigma.items()
    }
    tau = RotationSystem(Y, orders)
    P, Q = prechambers(X, sigma), prechambers(Y, tau)
    mapped = sorted(sorted((fmap[df.face], df.sign) for df in c.members) for c in P.classes)
    assert mapped == library_classes(Q)


def test_not_edge_regular():
    X = TwoComplex([0, 1], {0: (0, 1)}, {0: [0, 0, 1, 0]})
    sigma = rotation_from_positive(X, {0: X.slots(0)})
    with pytest.raises(NotEdgeRegular):
        prechambers(X, sigma)


def test_classes_partition_directed_faces():
    X = complex_from_cycles([(0, 1, 2), (0, 1, 3), (0, 1, 4), (1, 2, 3)])
    sigma = rotation_from_positive(X, {e: X.slots(e) for e in X.edge_ids()})
    P = prechambers(X, sigma)
    members = [df for c in P.classes for df in c.members]
    assert sorted(members) == sorted(X.directed_faces())
    assert library_classes(P) == prechamber_classes(*plain(X, sigma))


def test_random_orders_match_oracle(seed):
    import random

    rng = random.Random(seed)
    X = complex_from_cycles([(0, 1, 2), (0, 1, 3), (0, 1, 4), (1, 2, 3), (0, 2, 4), (2, 3, 4)])
    for _ in range(30):
        orders = {}
        for e in X.edge_ids():
            seq = list(X.slots(e))
            rng.shuffle(seq)
            orders[e] = seq
        sigma = rotation_from_positive(X, orders)
        assert library_classes(prechambers(X, sigma)) == prechamber_classes(*plain(X, sigma))
