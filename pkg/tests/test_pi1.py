import random

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from cayley3.complex import Face, TwoComplex, complex_from_cycles
from cayley3.errors import DisconnectedComplex
from cayley3.pi1 import (
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
    abelianization,
    pi1_presentation,
    simplify,
    smith_invariants,
)
from cayley3.presentation import parse_presentation
from cayley3.standard import cube, tetrahedron, triangle


def sympy_invariants(rows, ncols):
    if not rows:
        return (0,) * ncols
    d = smith_normal_form(Matrix(rows))
    diag = [abs(d[i, i]) for i in range(min(d.shape))]
    diag += [0] * (ncols - len(diag))
    return tuple(sorted((x for x in diag if x != 1), key=lambda x: (x == 0, x)))


def test_smith_against_sympy(seed):
    rng = random.Random(seed)
    for _ in range(150):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        ours = smith_invariants(rows, n)
        assert tuple(sorted(ours, key=lambda x: (x == 0, x))) == sympy_invariants(rows, n)


def one_vertex(walks, n_loops):
    edges = {e: (0, 0) for e in range(n_loops)}
    faces = {}
    for f, w in enumerate(walks):
        faces[f] = Face((0,) * len(w), tuple(abs(x) - 1 for x in w), tuple(1 if x > 0 else -1 for x in w))
    return TwoComplex([0], edges, faces)


@pytest.mark.parametrize(
    "X,verdict,inv",
    [
        (tetrahedron()[0], TRIVIAL, ()),
        (cube()[0], TRIVIAL, ()),
        (triangle(), TRIVIAL, ()),
        (triangle().without_faces([0]), NONTRIVIAL, (0,)),
        (one_vertex([(1, 2, -1, -2)], 2), NONTRIVIAL, (0, 0)),
        (one_vertex([(1, 1)], 1), NONTRIVIAL, (2,)),
        (one_vertex([(1, 1, 1, 1, 1)], 1), NONTRIVIAL, (5,)),
        (one_vertex([(1, 1, 1), (1, 1)], 1), TRIVIAL, ()),
    ],
    ids=["tetrahedron", "cube", "disc", "circle", "torus", "rp2", "pseudo-projective-5", "cyclic-1"],
)
def test_pi1_verdicts(X, verdict, inv):
    p = pi1_presentation(X)
    assert p.verdict == verdict
    assert tuple(sorted(p.abelian_invariants)) == tuple(sorted(inv))


def test_perfect_group_is_unknown():
    # binary icosahedral group: perfect, nontrivial, two generators survive
    X = one_vertex([(1, 1, -2, -2, -2), (1, 1, -1, 2, -1, 2, -1, 2, -1, 2, -1, 2)], 2)
    p = pi1_presentation(X)
    assert p.abelian_invariants == ()
    assert p.verdict == UNKNOWN


def test_disconnected_raises():
    X = complex_from_cycles([(0, 1, 2), (3, 4, 5)])
    with pytest.raises(DisconnectedComplex):
        pi1_presentation(X)


def test_simplify_keeps_abelianisation():
    p = parse_presentation("gens: a b c\nrels: a b c^-1; a^2 b^-3; c^4")
    q, _ = simplify(p)
    assert q.rank < p.rank
    assert sorted(abelianization(q)) == sorted(abelianization(p))


def test_sphere_with_many_faces_is_trivial():
    # the octahedron boundary
    cyc = [(0, a, b) for a, b in [(1, 2), (2, 3), (3, 4), (4, 1)]] + [(5, b, a) for a, b in [(1, 2), (2, 3), (3, 4), (4, 1)]]
    assert pi1_presentation(complex_from_cycles(cyc)).verdict == TRIVIAL
