"""Homomorphism layer: catalog maps, search, canonical forms, equivalence."""

import pytest

from coxhom.errors import GroupTooLarge, InvalidHom, NoCatalogEntry
from coxhom.homs import (
    WHom,
    automorphism_generators,
    canonical_form,
    catalog,
    classify_uceps,
    exists_proper_ucep,
    inner_aut,
    merge_by_automorphisms,
    preserves_coloured,
    standard_hom,
    valid_tuples,
)

from conftest import group_of


def test_standard_hom(b3):
    mu = standard_hom(b3)
    assert mu.is_valid()
    assert mu.is_surjective()
    assert mu.is_ucep() and not mu.is_proper()
    assert mu.is_ordinary()


def test_invalid_images_detected(b3):
    bad = WHom(b3, (b3.gen(1), b3.gen(1), b3.gen(3)))
    assert not bad.is_valid()
    assert not bad.is_ucep()
    with pytest.raises(InvalidHom):
        bad.require_valid()


EXISTS = ["A1", "I2:6", "I2:10", "I2:14", "B3", "B5", "H3"]
NOT_EXISTS = ["A2", "A3", "A4", "I2:5", "I2:8", "I2:12", "B2", "B4", "D4", "F4", "H4"]


def test_exists_proper_ucep_table():
    for code in EXISTS:
        ok, chi = exists_proper_ucep(group_of(code))
        assert ok and chi is not None, code
    for code in NOT_EXISTS:
        ok, chi = exists_proper_ucep(group_of(code))
        assert not ok and chi is None, code


def test_witness_character_sends_longest_to_minus_one():
    g = group_of("B5")
    ok, chi = exists_proper_ucep(g)
    assert ok
    assert g.character_value(chi, g.longest_element()) == -1
    for s in g.generators:
        assert g.character_value(chi, s) in (-1, 1)


def test_catalog_i2_6():
    g = group_of("I2:6")
    maps = catalog(g)
    assert set(maps) == {"mu_prime"}
    mp = maps["mu_prime"]
    assert mp.is_proper() and mp.is_ordinary()
    assert mp.image_order() == 6
    s1, s2 = g.gen(1), g.gen(2)
    assert mp.images == (s1, s2 * s1 * s2)


def test_catalog_i2_8():
    maps = catalog(group_of("I2:8"))
    assert set(maps) == {"nu1", "nu2"}
    for m in maps.values():
        assert m.is_valid()
        assert m.is_surjective()  # whole group, so a ucep but not proper
        assert not m.is_ordinary()


def test_catalog_i2_7_empty():
    with pytest.raises(NoCatalogEntry):
        catalog(group_of("I2:7"))


def test_catalog_b3(b3):
    maps = catalog(b3)
    assert set(maps) == {"mu_prime", "nu1", "nu2", "nu3", "nu4"}
    for m in maps.values():
        assert m.is_valid() and m.is_ucep()
    proper = {name for name, m in maps.items() if m.is_proper()}
    assert proper == {"mu_prime", "nu3", "nu4"}
    assert maps["mu_prime"].is_ordinary()
    assert not maps["nu3"].is_ordinary()
    assert not maps["nu4"].is_ordinary()


def test_catalog_h3(h3):
    maps = catalog(h3)
    assert set(maps) == {"mu_prime", "mu_second", "nu3", "nu4"}
    for m in maps.values():
        assert m.is_proper(), m.name
        assert m.image_order() == 60
    assert maps["mu_prime"].is_ordinary()
    assert maps["mu_second"].is_ordinary()
    assert not maps["nu3"].is_ordinary()
    assert not maps["nu4"].is_ordinary()


def test_catalog_images_differ_pairwise(h3):
    keys = {canonical_form(m)[1] for m in catalog(h3).values()}
    assert len(keys) == 4


def test_canonical_form_conjugation_invariant(b3):
    mu = catalog(b3)["mu_prime"]
    _, key, size = canonical_form(mu)
    for w in list(b3.enumerate_all())[:12]:
        _, key2, size2 = canonical_form(mu.conjugate(w))
        assert key2 == key
        assert size2 == size
    assert b3.order() % size == 0


def test_valid_tuples_on_a2(a2):
    # tuples (x, y) with xyx = yxy; 3 transpositions x 2 choices + diagonal-free count
    tuples = list(valid_tuples(a2))
    for x, y in tuples:
        assert x * y * x == y * x * y
    mu = standard_hom(a2)
    assert tuple(mu.images) in {t for t in tuples} or any(
        t == mu.images for t in tuples
    )


def test_classify_refuses_large_groups():
    with pytest.raises(GroupTooLarge):
        classify_uceps(group_of("F4"), bound=1000)


def test_classify_i2_6_conjugacy_vs_equivalence():
    # conjugation alone keeps the two generator roles apart; the graph
    # swap merges them into a single class
    conj = classify_uceps(group_of("I2:6"), mode="conjugacy")
    assert len(conj.proper_rows()) == 2
    merged = classify_uceps(group_of("I2:6"), mode="equivalence")
    proper = merged.proper_rows()
    assert len(proper) == 1
    assert proper[0].name == "mu_prime"
    assert proper[0].ordinary


def test_classify_a2_has_no_proper_classes(a2):
    report = classify_uceps(a2, mode="equivalence")
    assert report.proper_rows() == []
    # the surjective classes are the standard map and its relation-preserving twists
    assert all(not row.proper for row in report.rows)


def test_automorphisms_preserve_relations(b3, h3):
    for g in (b3, h3):
        for aut in automorphism_generators(g):
            for i in range(1, g.rank + 1):
                for j in range(i + 1, g.rank + 1):
                    m = g.graph.m(i, j)
                    a, b = aut.apply(g.gen(i)), aut.apply(g.gen(j))
                    lhs = rhs = g.identity
                    for k in range(m):
                        lhs = lhs * (a if k % 2 == 0 else b)
                        rhs = rhs * (b if k % 2 == 0 else a)
                    assert lhs == rhs


def test_inner_aut_apply(b3):
    w = b3.gen(1) * b3.gen(2)
    aut = inner_aut(b3, w)
    x = b3.gen(3)
    assert aut.apply(x) == w * x * w.inverse()


def test_merge_by_automorphisms_h3(h3):
    maps = list(catalog(h3).values())
    auts = automorphism_generators(h3)
    clusters = merge_by_automorphisms(h3, maps, auts)
    merged = {frozenset(maps[i].name for i in cluster) for cluster in clusters}
    assert merged == {
        frozenset({"mu_prime", "mu_second"}),
        frozenset({"nu3", "nu4"}),
    }


def test_preserves_coloured(b3):
    from coxhom.words import parse_word

    # squares of the generators land back inside the colour kernel
    words = [parse_word(t, b3.graph) for t in ("1 1", "2 2", "3 3")]
    assert preserves_coloured(b3, words)
    plain = [parse_word(t, b3.graph) for t in ("1", "2", "3")]
    assert preserves_coloured(b3, plain)
    # nu1 sends the second generator to a rotation, which escapes the kernel
    nu1 = [parse_word(" ".join(map(str, w)), b3.graph) for w in catalog(b3)["nu1"].image_words()]
    assert not preserves_coloured(b3, nu1)


def test_preserves_coloured_rejects_invalid_images(b3):
    from coxhom.errors import RelationViolation
    from coxhom.words import parse_word

    words = [parse_word(t, b3.graph) for t in ("1", "1", "3")]
    with pytest.raises(RelationViolation):
        preserves_coloured(b3, words)
