"""Search pipelines: the H3 stages, the E7 censuses, and the B-type check."""

import numpy as np
import pytest

from coxhom.conjugacy import ConjClass, conjugacy_classes
from coxhom.errors import Table1Missing
from coxhom.pipelines import (
    ClassStatsRow,
    _class_stats,
    _closure_rows,
    _commuting_triples,
    _count_v,
    _count_v_prime,
    _transporter,
    _v_reference_count,
    _v_slice_count,
    bn_verify,
    e7_table1,
    e7_table2_and_V,
    h3_search,
)
from coxhom._kernels import braid_matrix, commute_matrix, invert_rows

from conftest import group_of


def test_h3_stage_counts():
    report = h3_search()
    v = report.verdicts
    assert v["x1"] == 600
    assert v["x2"] == 18
    assert v["x3"] == 4
    assert v["merged_classes"] == 2


def test_h3_catalog_names_all_found():
    v = h3_search().verdicts
    assert set(v["x3_names"]) == {"mu_prime", "mu_second", "nu3", "nu4"}
    assert sorted(sorted(c) for c in v["merged_names"]) == [
        ["mu_prime", "mu_second"],
        ["nu3", "nu4"],
    ]


def test_h3_representatives_are_valid_proper_uceps(h3):
    from coxhom.homs import WHom

    report = h3_search()
    assert len(report.representatives) == 4
    for name, hom in report.representatives:
        assert hom.is_valid()
        assert hom.is_proper()
        assert hom.image_order() == 60


def test_h3_deterministic():
    a = h3_search().to_dict()
    b = h3_search().to_dict()
    a.pop("timings")
    b.pop("timings")
    assert a == b


def test_transporter_conjugates(b3):
    classes = conjugacy_classes(b3)
    cls = next(c for c in classes if c.size > 1)
    rows = cls.rows()
    u = _transporter(b3, cls.rep, rows[-1])
    assert np.array_equal((u * cls.rep * u.inverse()).row, rows[-1])


def test_transporter_rejects_nonconjugate(b3):
    with pytest.raises(ValueError):
        _transporter(b3, b3.identity, b3.gen(1).row)


def test_closure_rows_recovers_subgroup(b3):
    gens = np.stack([b3.gen(1).row, b3.gen(2).row])
    rows = _closure_rows(gens, b3.identity.row)
    assert rows.shape[0] == 8  # dihedral of the bond-4 pair


def test_commuting_triples_small():
    m = np.ones((3, 3), dtype=bool)
    np.fill_diagonal(m, False)
    assert len(_commuting_triples(m)) == 6
    m[0, 1] = m[1, 0] = False
    assert len(_commuting_triples(m)) == 0


def test_class_stats_pivot_invariance(f4):
    # the pivot is a convention; counts transport along conjugation
    classes = [c for c in conjugacy_classes(f4) if c.parity == 0 and c.size > 1]
    cls = max(classes, key=lambda c: c.size)
    base = _class_stats(f4, cls)
    rows = cls.rows()
    for alt_row in (rows[len(rows) // 2], rows[-1]):
        alt = ConjClass(f4, type(cls.rep)(alt_row.copy()), cls.size)
        other = _class_stats(f4, alt)
        assert other.content() == base.content()


def test_f4_pair_identities(f4):
    # |C| * |X| counts braid pairs, |C| * |D| commuting pairs, both checked
    # against the full quadratic enumeration
    for cls in conjugacy_classes(f4):
        if cls.parity != 0 or cls.size > 200:
            continue
        row = _class_stats(f4, cls)
        members = cls.rows()
        assert int(braid_matrix(members, members).sum()) == row.u
        assert int(commute_matrix(members, members).sum()) == row.y


def test_stats_row_serialization():
    row = ClassStatsRow(size=2, x=1, y=2, z=3, z_distinct=0, u=2, rep_word=(1, 2))
    d = row.to_dict()
    assert d["rep_word"] == [1, 2]
    assert row.content() == (2, 1, 2, 3, 0)


def test_e7_size_63_row(e7_t1_63):
    assert e7_t1_63.verdicts["even_classes"] == 30
    assert e7_t1_63.verdicts["even_total"] == 1451520
    assert e7_t1_63.verdicts["row_count"] == 1
    row = e7_t1_63.rows[0]
    assert (row.size, row.x, row.y, row.z) == (63, 33, 1953, 4353)
    assert row.u == 63 * 33 == 2079
    assert row.z_distinct == 2880


def test_e7_size_63_rep_word_is_even_involution(e7_t1_63):
    g = group_of("E7")
    row = e7_t1_63.rows[0]
    w = g.word_to_element(row.rep_word)
    assert g.is_identity(w * w)
    assert len(row.rep_word) % 2 == 0


def test_v_pruning_matches_reference(e7_t1_63):
    g = group_of("E7")
    row = e7_t1_63.rows[0]
    rep = g.word_to_element(row.rep_word)
    cls = ConjClass(g, rep, row.size)
    members = cls.rows()
    pivot = rep.row
    from coxhom._kernels import braid_mask, commute_mask

    bx = members[braid_mask(members, pivot)]
    dd = members[commute_mask(members, pivot)]
    m = commute_matrix(bx, bx)
    np.fill_diagonal(m, False)
    triples = _commuting_triples(m)
    assert len(triples) == row.z_distinct
    cdx = commute_matrix(dd, bx)
    bdx = braid_matrix(dd, bx)
    cdd = commute_matrix(dd, dd)
    bdd = braid_matrix(dd, dd)
    sample = triples[:: max(1, len(triples) // 24)]
    got = _v_slice_count(cdx, bdx, cdd, bdd, sample)
    want = sum(
        _v_reference_count(members, pivot, bx[a], bx[b], bx[c])
        for a, b, c in sample
    )
    assert got == want


def test_count_v_thread_sharding_agrees(e7_t1_63):
    g = group_of("E7")
    row = e7_t1_63.rows[0]
    rep = g.word_to_element(row.rep_word)
    cls = ConjClass(g, rep, row.size)
    v1 = _count_v(g, cls, threads=1)
    v3 = _count_v(g, cls, threads=3)
    assert v1 == v3 == 23040


def test_table2_size_63(e7_t1_63):
    report = e7_table2_and_V(e7_t1_63, class_size=63)
    assert report.verdicts["survivors"] == 1
    assert report.verdicts["v2"] == 23040
    assert report.verdicts["v2_prime"] == 23040
    row = report.rows[0]
    assert row.u == 2079
    assert row.v == 23040


def test_table2_requires_table1(e7_t1_63):
    with pytest.raises(Table1Missing):
        e7_table2_and_V(None)
    with pytest.raises(Table1Missing):
        e7_table2_and_V(h3_search())


def test_count_v_prime_centralizer_coset(e7_t1_63):
    g = group_of("E7")
    row = e7_t1_63.rows[0]
    rep = g.word_to_element(row.rep_word)
    assert _count_v_prime(g, rep, row.size) == 23040


def test_bn_verify_b3():
    report = bn_verify(3, bound=200)
    proper = report.proper_rows()
    assert len(proper) == 3
    names = {row.name for row in proper} | {
        n for row in proper for n in row.merged_names
    }
    assert {"mu_prime", "nu3", "nu4"} <= names


def test_bn_verify_rejects_bad_rank():
    with pytest.raises(ValueError):
        bn_verify(2)
    with pytest.raises(ValueError):
        bn_verify(4)
