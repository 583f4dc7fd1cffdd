"""Census pipelines over the types too large for the generic classifier.

Three searches: the full triple sweep over the order-120 rank-3
icosahedral group, the per-conjugacy-class commuting/braiding census
over the even classes of E7 together with the pinned generator-tuple
count, and a self-checking rerun of the small odd-rank B_n
classification.  Hot loops route through the kernel backend.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernels import (
    RowSet,
    braid_mask,
    braid_matrix,
    commute_mask,
    commute_matrix,
    compose_one_many,
    invert_rows,
)
from .conjugacy import ConjClass, conjugacy_classes
from .errors import Table1Missing
from .graphs import parse_graph
from .groups import RootElement, build_group
from .homs import (
    HomClassReport,
    WHom,
    automorphism_generators,
    canonical_form,
    catalog,
    classify_uceps,
    conjugation_pairs,
    merge_by_automorphisms,
)


@dataclass
class ClassStatsRow:
    """Census of one conjugacy class against its fixed pivot element.

    x counts class members in the length-3 relation with the pivot, y the
    ordered commuting pairs inside the class, z the ordered pairwise
    commuting triples over the x-part, z_distinct those with pairwise
    distinct entries; u and v are filled by the later stages.
    """

    size: int
    x: int
    y: int
    z: int
    z_distinct: int
    u: int | None = None
    v: int | None = None
    rep_word: tuple = ()

    def content(self) -> tuple:
        return (self.size, self.x, self.y, self.z, self.z_distinct)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "z_distinct": self.z_distinct,
            "u": self.u,
            "v": self.v,
            "rep_word": list(self.rep_word),
        }


@dataclass
class SearchReport:
    graph: str
    stage: str
    rows: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    representatives: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "graph": self.graph,
            "stage": self.stage,
            "rows": [row.to_dict() for row in self.rows],
            "verdicts": dict(self.verdicts),
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
        }
        if self.representatives:
            out["representatives"] = [
                {"name": name, "images": [list(w) for w in hom.image_words()]}
                for name, hom in self.representatives
            ]
        return out


def _alt_relation_matrix(rows: np.ndarray, m: int) -> np.ndarray:
    """Matrix of pairs (a, b) whose alternating products of length m agree."""
    if m == 2:
        return commute_matrix(rows, rows)
    if m == 3:
        return braid_matrix(rows, rows)
    n = rows.shape[0]
    out = np.empty((n, n), dtype=bool)
    for i in range(n):
        a = rows[i]
        left = np.broadcast_to(a, rows.shape).copy()
        right = rows.copy()
        for step in range(2, m + 1):
            if step % 2 == 0:
                left = np.take_along_axis(left, rows, axis=1)
                right = right[:, a]
            else:
                left = left[:, a]
                right = np.take_along_axis(right, rows, axis=1)
        out[i] = np.all(left == right, axis=1)
    return out


def h3_search() -> SearchReport:
    """Sweep all element triples of the rank-3 icosahedral group through
    its defining relations, then sieve.

    Stage 1 keeps the triples satisfying all three pairwise relations,
    stage 2 one representative per simultaneous-conjugation orbit, stage
    3 those generating the index-2 subgroup.  The final representatives
    are matched against the catalog and merged under the automorphism
    action.
    """
    timings: dict[str, float] = {}
    t_all = time.perf_counter()
    group = build_group(parse_graph("H3"))
    rows = group.enumerate_rows()
    rows = rows[np.lexsort(rows.T[::-1])]
    n = rows.shape[0]

    t0 = time.perf_counter()
    r12 = _alt_relation_matrix(rows, group.graph.m(1, 2))
    r13 = _alt_relation_matrix(rows, group.graph.m(1, 3))
    r23 = _alt_relation_matrix(rows, group.graph.m(2, 3))
    timings["pair_matrices"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    triples = []
    for x in range(n):
        ys = np.flatnonzero(r12[x])
        if ys.size == 0:
            continue
        zx = r13[x]
        for y in ys:
            for z in np.flatnonzero(zx & r23[y]):
                triples.append((x, int(y), int(z)))
    timings["triples"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    inv = invert_rows(rows)
    lookup = {rows[k].tobytes(): k for k in range(n)}
    conj = np.empty((n, n), dtype=np.int32)
    for w in range(n):
        cw = rows[w][rows[:, inv[w]]]
        for k in range(n):
            conj[w, k] = lookup[cw[k].tobytes()]
    canonicals: dict[tuple, tuple] = {}
    for tri in triples:
        imgs = conj[:, tri]
        best = np.lexsort((imgs[:, 2], imgs[:, 1], imgs[:, 0]))[0]
        canonicals.setdefault(tuple(int(v) for v in imgs[best]), tri)
    timings["orbits"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    stage2 = [
        WHom(group, tuple(RootElement(rows[i]) for i in canon))
        for canon in sorted(canonicals)
    ]
    half = group.order() // 2
    stage3 = [hom for hom in stage2 if hom.image_order() == half]
    pairs = conjugation_pairs(group)
    names = {}
    for name, entry in catalog(group).items():
        _, key, _ = canonical_form(entry, pairs)
        names[key] = name
    labeled = []
    for hom in stage3:
        _, key, _ = canonical_form(hom, pairs)
        labeled.append((names.get(key), hom))
    clusters = merge_by_automorphisms(
        group, [hom for _, hom in labeled], automorphism_generators(group)
    )
    merged_names = sorted(
        tuple(sorted(labeled[i][0] or "unnamed" for i in cluster))
        for cluster in clusters
    )
    timings["sieve"] = time.perf_counter() - t0
    timings["total"] = time.perf_counter() - t_all

    return SearchReport(
        graph="H3",
        stage="h3",
        verdicts={
            "x1": len(triples),
            "x2": len(stage2),
            "x3": len(stage3),
            "x3_names": sorted(name or "unnamed" for name, _ in labeled),
            "merged_classes": len(clusters),
            "merged_names": [list(t) for t in merged_names],
        },
        timings=timings,
        representatives=labeled,
    )


def _chunked_mask(kernel, members: np.ndarray, pivot: np.ndarray,
                  chunk: int = 1 << 16) -> np.ndarray:
    if members.shape[0] <= chunk:
        return kernel(members, pivot)
    parts = [
        kernel(members[i:i + chunk], pivot)
        for i in range(0, members.shape[0], chunk)
    ]
    return np.concatenate(parts)


def _class_stats(group, cls: ConjClass) -> ClassStatsRow:
    members = cls.rows()
    pivot = cls.rep.row
    x_mask = _chunked_mask(braid_mask, members, pivot)
    d_count = int(_chunked_mask(commute_mask, members, pivot).sum())
    bx = members[x_mask]
    m = commute_matrix(bx, bx).astype(np.int64)
    z = int(np.einsum("ab,ac,bc->", m, m, m, optimize=True))
    # the diagonal of m is all ones, so m.sum() - |X| is the number of
    # ordered commuting pairs with distinct entries
    p = int(m.sum()) - bx.shape[0]
    x_count = int(x_mask.sum())
    return ClassStatsRow(
        size=cls.size,
        x=x_count,
        y=cls.size * d_count,
        z=z,
        z_distinct=z - 3 * p - bx.shape[0],
        u=cls.size * x_count,
        rep_word=tuple(group.reduced_word(cls.rep)),
    )


def e7_table1(class_size: int | None = None, seed: int = 0,
              threads: int = 1) -> SearchReport:
    """Census over the nontrivial even conjugacy classes of E7.

    Every class of even length gets a ClassStatsRow against its least
    member as pivot; `class_size` restricts the sweep to classes of that
    size.  The even classes must tile the index-2 subgroup exactly, which
    is checked before any counting starts.
    """
    timings: dict[str, float] = {}
    t_all = time.perf_counter()
    group = build_group(parse_graph("E7"))
    t0 = time.perf_counter()
    classes = conjugacy_classes(group, seed=seed)
    timings["classes"] = time.perf_counter() - t0

    even = [c for c in classes if c.parity == 0]
    even_total = sum(c.size for c in even)
    assert even_total == group.order() // 2
    assert len(even) == 30
    selected = [
        c for c in even
        if c.size > 1 and (class_size is None or c.size == class_size)
    ]

    t0 = time.perf_counter()
    if threads > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda c: _class_stats(group, c), selected))
    else:
        rows = [_class_stats(group, c) for c in selected]
    timings["stats"] = time.perf_counter() - t0
    timings["total"] = time.perf_counter() - t_all

    return SearchReport(
        graph="E7",
        stage="e7-table1",
        rows=rows,
        verdicts={
            "even_classes": len(even),
            "even_total": even_total,
            "row_count": len(rows),
        },
        timings=timings,
    )


def _commuting_triples(m: np.ndarray) -> list[tuple[int, int, int]]:
    """Ordered pairwise-commuting triples of distinct indices; expects the
    diagonal already cleared."""
    out = []
    for a in range(m.shape[0]):
        row_a = m[a]
        for b in np.flatnonzero(row_a):
            for c in np.flatnonzero(row_a & m[b]):
                out.append((a, int(b), int(c)))
    return out


def _v_slice_count(cdx, bdx, cdd, bdd, triples) -> int:
    """Tuple count for a batch of outer triples.

    For the outer triple (a, b, c) of x-indices, candidate u1 commutes
    with a and c and braids b, u6 commutes with a and b and braids c, u7
    commutes with all three; then u6/u7 must braid each other and u1
    commute with both.
    """
    total = 0
    for a, b, c in triples:
        u1 = cdx[:, a] & cdx[:, c] & bdx[:, b]
        if not u1.any():
            continue
        u6 = cdx[:, a] & cdx[:, b] & bdx[:, c]
        if not u6.any():
            continue
        u7 = cdx[:, a] & cdx[:, b] & cdx[:, c]
        if not u7.any():
            continue
        for i in np.flatnonzero(u6):
            js = u7 & bdd[i]
            if not js.any():
                continue
            u1i = u1 & cdd[i]
            if not u1i.any():
                continue
            for j in np.flatnonzero(js):
                total += int(np.count_nonzero(u1i & cdd[j]))
    return total


def _count_v(group, cls: ConjClass, threads: int = 1,
             expected_triples: int | None = None) -> int:
    members = cls.rows()
    pivot = cls.rep.row
    bx = members[_chunked_mask(braid_mask, members, pivot)]
    dd = members[_chunked_mask(commute_mask, members, pivot)]
    if bx.shape[0] == 0 or dd.shape[0] == 0:
        return 0
    m = commute_matrix(bx, bx)
    np.fill_diagonal(m, False)
    triples = _commuting_triples(m)
    if expected_triples is not None:
        assert len(triples) == expected_triples
    if not triples:
        return 0
    cdx = commute_matrix(dd, bx)
    bdx = braid_matrix(dd, bx)
    cdd = commute_matrix(dd, dd)
    bdd = braid_matrix(dd, dd)
    if threads <= 1 or len(triples) < 256:
        return _v_slice_count(cdx, bdx, cdd, bdd, triples)
    shards = [triples[k::threads] for k in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(
            pool.map(lambda s: _v_slice_count(cdx, bdx, cdd, bdd, s), shards)
        )


def _rows_commute(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a[b], b[a]))


def _rows_braid(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a[b[a]], b[a[b]]))


def _v_reference_count(members: np.ndarray, pivot: np.ndarray,
                       t2: np.ndarray, t3: np.ndarray,
                       t5: np.ndarray) -> int:
    """Direct transcription of the tuple constraints over the whole class
    for one fixed outer triple; quadratic, test use only."""
    u1 = (commute_mask(members, t2) & commute_mask(members, t5)
          & commute_mask(members, pivot) & braid_mask(members, t3))
    u6 = (commute_mask(members, t2) & commute_mask(members, t3)
          & commute_mask(members, pivot) & braid_mask(members, t5))
    u7 = (commute_mask(members, t2) & commute_mask(members, t3)
          & commute_mask(members, t5) & commute_mask(members, pivot))
    total = 0
    for b in members[u6]:
        for c in members[u7]:
            if not _rows_braid(b, c):
                continue
            for a in members[u1]:
                if _rows_commute(a, b) and _rows_commute(a, c):
                    total += 1
    return total


def _transporter(group, source, target_row: np.ndarray):
    """Element u with u * source * u^-1 equal to the target, found by a
    conjugation search over the class of the source."""
    gens = [group.gen(i) for i in group.vertices]
    seen = {source.key()}
    frontier = [(source, group.identity)]
    while frontier:
        nxt = []
        for el, u in frontier:
            if np.array_equal(el.row, target_row):
                return u
            for g in gens:
                el2 = g * el * g
                key = el2.key()
                if key not in seen:
                    seen.add(key)
                    nxt.append((el2, g * u))
        frontier = nxt
    raise ValueError("target is not conjugate to the source")


def _closure_rows(gen_rows, identity_row: np.ndarray) -> np.ndarray:
    """All rows of the subgroup generated by the given rows."""
    seen = RowSet(identity_row.shape[0])
    seen.add_new(identity_row[None, :])
    collected = [identity_row[None, :]]
    frontier = collected[0]
    while frontier.shape[0]:
        parts = []
        for g in gen_rows:
            cand = frontier[:, g]
            fresh = cand[seen.add_new(cand)]
            if fresh.shape[0]:
                parts.append(fresh)
        if not parts:
            break
        frontier = np.concatenate(parts)
        collected.append(frontier)
    return np.concatenate(collected)


def _count_v_prime(group, pivot_el, size: int) -> int:
    """Distinct 7-tuples of conjugated central twists of the generators,
    with the conjugator constrained to carry the twisted branch generator
    onto the pivot."""
    w0 = group.longest_element()
    source = w0 * group.gen(4)
    u0 = _transporter(group, source, pivot_el.row)
    cent_gens = ConjClass(group, source, size).centralizer_generators()
    cent = _closure_rows([g.row for g in cent_gens], group.identity.row)
    assert cent.shape[0] * size == group.order()
    coset = compose_one_many(u0.row, cent)
    coset_inv = invert_rows(coset)
    stacks = []
    for i in group.vertices:
        g = (w0 * group.gen(i)).row
        stacks.append(np.take_along_axis(coset, g[coset_inv], axis=1))
    assert np.all(stacks[3][0] == pivot_el.row)
    bundle = np.concatenate(stacks, axis=1)
    return int(np.unique(bundle, axis=0).shape[0])


def e7_table2_and_V(table1: SearchReport | None,
                    class_size: int | None = None,
                    threads: int = 1) -> SearchReport:
    """Count the pinned generator 7-tuples for every class surviving the
    first-stage census.

    A tuple fixes the class pivot as its branch entry, takes a distinct
    commuting triple from the x-part for the three braid neighbours, and
    fills the remaining three slots from the pivot's commutant inside the
    class, subject to the commuting and length-3 relations of the rank-7
    diagram.  For the size-63 class the count is cross-checked against
    the conjugation-transported tuples of central generator twists.
    """
    if table1 is None or getattr(table1, "stage", None) != "e7-table1":
        raise Table1Missing("the first-stage census report is required")
    survivors = [row for row in table1.rows if row.z_distinct]
    if class_size is not None:
        survivors = [row for row in survivors if row.size == class_size]

    timings: dict[str, float] = {}
    t_all = time.perf_counter()
    group = build_group(parse_graph("E7"))
    rows_out = []
    v2 = None
    v2_prime = None
    for row in survivors:
        rep = group.word_to_element(row.rep_word)
        cls = ConjClass(group, rep, row.size)
        t0 = time.perf_counter()
        v = _count_v(group, cls, threads=threads,
                     expected_triples=row.z_distinct)
        timings[f"v_size_{row.size}"] = time.perf_counter() - t0
        rows_out.append(ClassStatsRow(
            size=row.size, x=row.x, y=row.y, z=row.z,
            z_distinct=row.z_distinct,
            u=row.u if row.u is not None else row.size * row.x,
            v=v, rep_word=row.rep_word,
        ))
        if row.size == 63:
            v2 = v
            t0 = time.perf_counter()
            v2_prime = _count_v_prime(group, rep, row.size)
            timings["v2_prime"] = time.perf_counter() - t0
    timings["total"] = time.perf_counter() - t_all

    return SearchReport(
        graph="E7",
        stage="e7-table2",
        rows=rows_out,
        verdicts={
            "survivors": len(rows_out),
            "v2": v2,
            "v2_prime": v2_prime,
        },
        timings=timings,
    )


def bn_verify(n: int = 3, bound: int = 200) -> HomClassReport:
    """Rerun the brute-force equivalence classification for an odd-rank
    B_n and check it against the catalog; raises on any mismatch."""
    if n < 3 or n % 2 == 0:
        raise ValueError("odd rank n >= 3 required")
    group = build_group(parse_graph(f"B{n}"))
    report = classify_uceps(group, mode="equivalence", bound=bound)
    entries = catalog(group)

    proper = report.proper_rows()
    got = sorted(row.name or "unnamed" for row in proper)
    if got != ["mu_prime", "nu3", "nu4"]:
        raise AssertionError(f"proper classes {got}")
    for row in proper:
        if row.ordinary != (row.name == "mu_prime"):
            raise AssertionError(f"{row.name} ordinary flag {row.ordinary}")

    comp = group.graph.components()[0]
    first = entries["nu4"].images[group.vertices.index(comp.canonical[0])]
    if not group.is_identity(first):
        raise AssertionError("nu4 must kill the first generator")

    for name in list(entries) + ["standard"]:
        hits = [
            row for row in report.rows
            if name == row.name or name in row.merged_names
        ]
        if len(hits) != 1:
            raise AssertionError(f"{name} found in {len(hits)} classes")
    return report
