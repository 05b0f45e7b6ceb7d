import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from cayley3.coset import enumerate_cosets
from cayley3.errors import InconclusiveEnumeration, InfiniteOrUnknown, NotGenerating
from cayley3.groups import (
    CosetGroup,
    MatrixGroup,
    PermutationGroup,
    model_from_presentation,
    translation_group,
    translation_vector,
)
from cayley3.presentation import parse_presentation
from cayley3.standard import SMALL_GROUPS, small_group


def sympy_order(p):
    F, *gens = free_group(" ".join(f"g{i}" for i in range(p.rank)))
    rels = []
    for r in p.relators:
        w = F.identity
        for x in r:
            g = gens[abs(x) - 1]
            w = w * (g if x > 0 else g**-1)
        rels.append(w)
    return FpGroup(F, rels).order()


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_orders_match_sympy(name):
    p, model = small_group(name)
    assert model.order == sympy_order(p)


@pytest.mark.parametrize(
    "text,order",
    [
        ("gens: a b\nrels: a^2 b^3 (ab)^5", 60),
        ("gens: a b\nrels: a^2 b^3 (ab)^4", 24),
        ("gens: a b\nrels: a^3 b^3 [a,b]", 9),
        ("gens: a\nrels: a", 1),
    ],
)
def test_known_orders(text, order):
    assert CosetGroup(parse_presentation(text)).order == order


def test_coset_table_is_a_permutation_representation():
    p = parse_presentation("gens: a b\nrels: a^2 b^3 (ab)^4")
    t = enumerate_cosets(p.rank, p.relators)
    assert t.complete
    n = len(t.table)
    for col in range(2 * p.rank):
        assert sorted(row[col] for row in t.table) == list(range(n))


def test_infinite_group_is_inconclusive():
    model = CosetGroup(parse_presentation("gens: x y\nrels: [x,y]"), limit=2000)
    assert not model.complete
    with pytest.raises(InconclusiveEnumeration):
        model.order


def test_limit_from_environment(monkeypatch):
    monkeypatch.setenv("CAYLEY3_COSET_LIMIT", "5")
    model = CosetGroup(parse_presentation("gens: a\nrels: a^7"))
    assert not model.complete


def test_permutation_model_matches_presentation():
    p = parse_presentation("gens: a b\nrels: a^3, b^2, (ab)^2\nperm a: (0 1 2)\nperm b: (0 1)")
    perm = model_from_presentation(p, "permutation")
    coset = model_from_presentation(p, "coset")
    assert perm.order == coset.order == 6
    for r in p.relators:
        assert perm.evaluate(r) == perm.identity


def test_permutation_product_order():
    g = PermutationGroup({"a": (1, 2, 0), "b": (1, 0, 2)})
    # ab applies a first, then b
    ab = g.mul(g.generator(0), g.generator(1))
    assert g.perm(ab) == (0, 2, 1)


def test_matrix_translations():
    Z2 = translation_group(2)
    assert not Z2.is_finite()
    x, y = Z2.generator(0), Z2.generator(1)
    assert translation_vector(Z2.mul(x, Z2.mul(y, x))) == (2, 1)
    assert len(Z2.ball(radius=2)) == 13
    with pytest.raises(InfiniteOrUnknown):
        Z2.enumerate()


def test_baumslag_solitar_relation_in_matrices():
    from fractions import Fraction

    m = MatrixGroup({"a": [[1, 1], [0, 1]], "b": [[2, 0], [0, 1]]})
    p = parse_presentation("gens: a b\nrels: b a b^-1 = a^2")
    assert m.evaluate(p.relators[0]) == m.identity
    assert m.inv(m.generator(1))[0][0] == Fraction(1, 2)


def test_ball_sizes_of_lattice():
    # |B_r| in Z^2 is 2r^2 + 2r + 1
    Z2 = translation_group(2)
    for r in range(5):
        assert len(Z2.ball(radius=r)) == 2 * r * r + 2 * r + 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(SMALL_GROUPS)), st.data())
def test_group_axioms(name, data):
    _, m = small_group(name)
    elems = m.enumerate()
    x, y, z = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z))
    assert m.mul(x, m.inv(x)) == m.identity
    assert m.mul(m.identity, x) == x


def test_not_generating():
    from cayley3.cayley import cayley_graph

    _, m = small_group("C2xC2")
    with pytest.raises(NotGenerating):
        cayley_graph(m, gens=["a"])


def test_matrix_finiteness():
    quarter_turn = MatrixGroup({"r": [[0, -1], [1, 0]], "s": [[1, 0], [0, -1]]})
    assert quarter_turn.is_finite() and len(quarter_turn.enumerate()) == 8
    assert not MatrixGroup({"d": [[2, 0], [0, 1]]}).is_finite()
    assert not MatrixGroup({"u": [[1, 1], [0, 1]]}).is_finite()
