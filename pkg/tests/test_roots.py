"""Root system construction: counts, closure, and the reflection tables."""

import numpy as np
import pytest

from coxhom.graphs import parse_graph
from coxhom.roots import build_root_system


@pytest.mark.parametrize(
    "code,count",
    [
        ("A1", 1),
        ("A3", 6),
        ("B3", 9),
        ("B4", 16),
        ("D4", 12),
        ("D5", 20),
        ("F4", 24),
        ("H3", 15),
        ("H4", 60),
        ("E6", 36),
        ("E7", 63),
    ],
)
def test_positive_root_counts(code, count):
    rs = build_root_system(parse_graph(code))
    assert rs.num_positive == count
    comp = rs.graph.components()[0]
    assert count == comp.rank * comp.coxeter_number // 2


def test_simple_roots_sit_at_recorded_indices():
    rs = build_root_system(parse_graph("B3"))
    for v, k in zip(rs.graph.vertices if hasattr(rs.graph, "vertices") else range(1, 4), rs.simple_indices):
        vec = rs.pos_roots[k]
        nonzero = [x for x in vec if x != 0]
        assert len(nonzero) == 1


def test_generator_tables_are_involutions():
    rs = build_root_system(parse_graph("F4"))
    n2 = 2 * rs.num_positive
    for i in range(rs.n):
        t = rs.gen_tables[i]
        assert np.array_equal(t[t], np.arange(n2, dtype=np.uint16))


def test_simple_reflection_negates_only_its_own_root():
    rs = build_root_system(parse_graph("D4"))
    npos = rs.num_positive
    for i, k in enumerate(rs.simple_indices):
        t = rs.gen_tables[i]
        sent_negative = [r for r in range(npos) if t[r] >= npos]
        assert sent_negative == [k]


def test_reflection_tables_are_reflections():
    # table r fixes root r's line and is an involution
    rs = build_root_system(parse_graph("H3"))
    npos = rs.num_positive
    n2 = 2 * npos
    ident = np.arange(n2, dtype=np.uint16)
    for r in range(npos):
        t = rs.reflection_tables[r]
        assert np.array_equal(t[t], ident)
        assert t[r] == r + npos
    assert len({t.tobytes() for t in rs.reflection_tables}) == npos


def test_negation_pairing():
    rs = build_root_system(parse_graph("A3"))
    npos = rs.num_positive
    for i in range(rs.n):
        t = rs.gen_tables[i]
        for r in range(npos):
            # images of opposite roots are opposite
            assert (int(t[r]) + npos) % (2 * npos) == int(t[r + npos])


def test_h3_coordinates_are_exact():
    from coxhom.golden import GoldenInt

    rs = build_root_system(parse_graph("H3"))
    kinds = {type(x) for vec in rs.pos_roots for x in vec}
    assert kinds <= {GoldenInt, int}
    assert any(isinstance(x, GoldenInt) and x.b != 0 for vec in rs.pos_roots for x in vec)


def test_crystallographic_coordinates_are_ints():
    rs = build_root_system(parse_graph("E6"))
    assert all(isinstance(x, int) for vec in rs.pos_roots for x in vec)


def test_root_at_covers_negatives():
    rs = build_root_system(parse_graph("A2"))
    npos = rs.num_positive
    for r in range(npos):
        pos = rs.root_at(r)
        neg = rs.root_at(r + npos)
        assert tuple(-x for x in pos) == neg
