"""Group backends: dihedral arithmetic, root permutations, and products.

The three element representations share one calling surface, so most
checks run the same assertions across backends.
"""

import random

import pytest

from coxhom.graphs import parse_graph
from coxhom.groups import DihedralGroup, build_group

from conftest import group_of


def random_word(rng, group, length):
    return [rng.choice(range(1, group.rank + 1)) for _ in range(length)]


@pytest.mark.parametrize(
    "code,order",
    [("A1", 2), ("A3", 24), ("B3", 48), ("D4", 192), ("H3", 120), ("F4", 1152), ("I2:7", 14), ("I2:12", 24), ("A2xA1", 12)],
)
def test_order(code, order):
    assert group_of(code).order() == order


def test_generators_are_involutions(b3, h3):
    for g in (b3, h3):
        for i in range(1, g.rank + 1):
            s = g.gen(i)
            assert g.is_identity(s * s)
            assert g.length(s) == 1


def test_braid_relations_hold(f4):
    graph = f4.graph
    for i in range(1, 5):
        for j in range(i + 1, 5):
            m = graph.m(i, j)
            a, b = f4.gen(i), f4.gen(j)
            prod = f4.identity
            for k in range(m):
                prod = prod * (a if k % 2 == 0 else b)
            other = f4.identity
            for k in range(m):
                other = other * (b if k % 2 == 0 else a)
            assert prod == other


def test_word_round_trip(a3):
    rng = random.Random(3)
    for _ in range(50):
        word = random_word(rng, a3, rng.randint(0, 12))
        w = a3.word_to_element(word)
        again = a3.word_to_element(a3.reduced_word(w))
        assert w == again
        assert a3.length(w) == len(a3.reduced_word(w))


def test_reduced_word_strategies_agree(b3):
    rng = random.Random(4)
    for _ in range(30):
        w = b3.word_to_element(random_word(rng, b3, 9))
        for strategy in ("min", "max"):
            word = b3.reduced_word(w, strategy=strategy)
            assert b3.word_to_element(word) == w
            assert len(word) == b3.length(w)


def test_length_is_subadditive(h3):
    rng = random.Random(5)
    for _ in range(40):
        u = h3.word_to_element(random_word(rng, h3, 7))
        v = h3.word_to_element(random_word(rng, h3, 7))
        assert h3.length(u * v) <= h3.length(u) + h3.length(v)
        assert (h3.length(u * v) - h3.length(u) - h3.length(v)) % 2 == 0


def test_inverse(f4):
    rng = random.Random(6)
    for _ in range(30):
        w = f4.word_to_element(random_word(rng, f4, 10))
        assert f4.is_identity(w * w.inverse())
        assert f4.length(w) == f4.length(w.inverse())


@pytest.mark.parametrize("code", ["A3", "B3", "H3", "I2:5", "I2:8"])
def test_longest_element(code):
    g = group_of(code)
    w0 = g.longest_element()
    comp = g.graph.components()[0]
    assert g.length(w0) == comp.rank * comp.coxeter_number // 2
    assert g.is_identity(w0 * w0)


def test_longest_maximal(a3):
    w0 = a3.longest_element()
    top = max(a3.length(w) for w in a3.enumerate_all())
    assert a3.length(w0) == top


XI_NONTRIVIAL = ["A2", "A3", "A5", "D5", "D7", "E6", "I2:5", "I2:7", "I2:9"]
XI_TRIVIAL = ["A1", "B2", "B3", "B4", "D4", "D6", "E7", "F4", "H3", "H4", "I2:6", "I2:8"]


def test_xi_fixed_point_classification():
    for code in XI_NONTRIVIAL:
        g = group_of(code)
        assert any(j != i for i, j in g.xi().items()), code
    for code in XI_TRIVIAL:
        g = group_of(code)
        assert all(j == i for i, j in g.xi().items()), code


def test_xi_concrete_values():
    assert group_of("A3").xi() == {1: 3, 2: 2, 3: 1}
    assert group_of("D5").xi() == {1: 1, 2: 2, 3: 3, 4: 5, 5: 4}
    assert group_of("E6").xi() == {1: 6, 2: 2, 3: 5, 4: 4, 5: 3, 6: 1}


def test_center_matches_xi():
    for code in XI_NONTRIVIAL:
        assert len(group_of(code).center()) == 1, code
    for code in XI_TRIVIAL:
        g = group_of(code)
        z = g.center()
        assert len(z) == 2 and z[1] == g.longest_element(), code


def test_center_elements_commute(b3):
    for z in b3.center():
        assert all(z * s == s * z for s in b3.generators)


def test_reflection_count(h3, f4):
    for g in (h3, f4):
        comp = g.graph.components()[0]
        t = g.reflections()
        assert len(t) == comp.rank * comp.coxeter_number // 2
        assert all(g.length(r) % 2 == 1 for r in t)
        assert all(g.is_identity(r * r) for r in t)


def test_reflections_closed_under_conjugation(b3):
    idx = {t.key() for t in b3.reflections()}
    for w in b3.enumerate_all():
        winv = w.inverse()
        for t in b3.reflections():
            assert (w * t * winv).key() in idx


def test_dihedral_matches_root_backend():
    # same graph, two element representations
    root = build_group(parse_graph("B2"))
    dih = DihedralGroup(4, vertices=(1, 2), graph=parse_graph("B2"))
    assert root.order() == dih.order() == 8
    rng = random.Random(7)
    for _ in range(40):
        word = [rng.choice([1, 2]) for _ in range(rng.randint(0, 8))]
        assert root.length(root.word_to_element(word)) == dih.length(dih.word_to_element(word))
    assert root.reduced_word(root.longest_element()) == dih.reduced_word(dih.longest_element())


def test_dihedral_rotation_arithmetic():
    g = DihedralGroup(7)
    s1, s2 = g.gen(1), g.gen(2)
    rot = s1 * s2
    acc = g.identity
    for k in range(1, 8):
        acc = acc * rot
        if k < 7:
            assert acc != g.identity
    assert acc == g.identity


def test_product_group():
    g = group_of("A2xA1")
    assert g.rank == 3
    assert g.order() == 12
    w0 = g.longest_element()
    assert g.length(w0) == 4
    assert g.is_identity(w0 * w0)
    # slot generators commute across the factor boundary
    assert g.gen(1) * g.gen(3) == g.gen(3) * g.gen(1)
    assert len(list(g.enumerate_all())) == 12


def test_product_group_center_refused():
    from coxhom.errors import DisconnectedGraph

    with pytest.raises(DisconnectedGraph):
        group_of("A2xA1").center()


def test_enumerate_all_sizes(a3, h3):
    assert len(list(a3.enumerate_all())) == 24
    assert len({w.key() for w in h3.enumerate_all()}) == 120


def test_subgroup_order(b3):
    sub = b3.subgroup([b3.gen(1), b3.gen(2)])
    assert sub.order() == 8


def test_descents(b3):
    w = b3.gen(1) * b3.gen(2)
    assert b3.right_descents(w) == [2]
    assert b3.right_descents(b3.identity) == []
    w0 = b3.longest_element()
    assert b3.right_descents(w0) == [1, 2, 3]
