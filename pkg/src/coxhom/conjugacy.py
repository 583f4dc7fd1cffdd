"""Conjugacy classes, with centralizer extraction.

Two strategies share one result type.  Groups whose order is below the
enumeration limit are listed in full and partitioned by conjugation BFS.
Larger root-permutation groups (the rank-7 and rank-8 types) are handled by
seeded sampling: random generator products propose representatives, each new
class is closed by conjugation BFS, and the run only terminates once class
sizes sum to the group order, so the partition is exact regardless of how
lucky the sampling was.

Large classes are not stored as rows.  Each class keeps a sorted array of
128-bit digests for membership queries and can re-materialize its rows on
demand; the digest keys are fixed so reports are reproducible.
"""

from __future__ import annotations

import numpy as np

from .groups import DihedralGroup, ProductGroup, RootElement, RootGroup
from .stabchain import StabChain

_DIGEST_SEED = 0x5EED_C0DE
_ENUMERATE_LIMIT = 200_000
_MAX_SAMPLES = 1_000_000


def _digest_keys(width: int) -> np.ndarray:
    rng = np.random.default_rng(_DIGEST_SEED)
    return rng.integers(1, 2**63 - 1, size=(2, width), dtype=np.uint64)


def digest_rows(rows: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """(m, 2) uint64 digests; wraparound dot products with fixed keys."""
    acc = rows.astype(np.uint64) @ keys.T
    return acc


def sort_digests(d: np.ndarray) -> np.ndarray:
    order = np.lexsort((d[:, 1], d[:, 0]))
    return d[order]


def digests_contain(sorted_d: np.ndarray, pair) -> bool:
    lo = np.searchsorted(sorted_d[:, 0], pair[0], side="left")
    hi = np.searchsorted(sorted_d[:, 0], pair[0], side="right")
    if lo == hi:
        return False
    return bool(np.any(sorted_d[lo:hi, 1] == pair[1]))


def _lex_min_row(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


class ConjClass:
    """One conjugacy class: canonical representative, exact size, membership."""

    def __init__(self, group, rep, size: int, digests: np.ndarray | None = None,
                 elements: frozenset | None = None):
        self.group = group
        self.rep = rep
        self.size = size
        self._digests = digests
        self._elements = elements

    @property
    def parity(self) -> int:
        return self.group.length(self.rep) % 2

    def contains(self, w) -> bool:
        if self._elements is not None:
            return w in self._elements
        keys = _digest_keys(w.row.shape[0])
        pair = digest_rows(w.row[None, :], keys)[0]
        return digests_contain(self._digests, pair)

    def rows(self) -> np.ndarray:
        """All class members as rows (root backend only); recomputed on demand."""
        rows, _ = _close_class_rows(self.group, self.rep.row)
        return rows

    def elements(self):
        if self._elements is not None:
            return sorted(self._elements, key=lambda e: e.key())
        return [RootElement(r) for r in self.rows()]

    def centralizer_order(self) -> int:
        return self.group.order() // self.size

    def centralizer_generators(self) -> list:
        """Generators of the centralizer of the representative, found from
        Schreier products over the conjugation BFS transversal and verified
        by stabilizer-chain order (root backend) or direct closure."""
        if isinstance(self.group, RootGroup):
            return _centralizer_generators_root(self.group, self.rep, self.size)
        return _centralizer_generators_generic(self.group, self.rep, self.size)

    def __repr__(self) -> str:
        return f"ConjClass(size={self.size})"


def _close_class_rows(group: RootGroup, rep_row: np.ndarray):
    """BFS closure of a class under conjugation by generators.

    Returns (rows, lex-min row).  Deduplication inside the BFS uses single
    64-bit digests so every step stays vectorized; a collision would only
    shrink the class, which the callers' exact size accounting (sizes must
    sum to the group order) turns into a loud failure, never a wrong table.
    """
    gens = [(g.row, g.inverse().row) for g in group.generators]
    keys = _digest_keys(rep_row.shape[0])
    key1 = keys[0]
    rows = rep_row[None, :].copy()
    seen = rows.astype(np.uint64) @ key1
    chunks = [rows]
    frontier = rows
    best = rep_row
    while frontier.shape[0]:
        images = [g[frontier[:, ginv]] for g, ginv in gens]
        cand = np.concatenate(images)
        dg = cand.astype(np.uint64) @ key1
        dg, first = np.unique(dg, return_index=True)
        cand = cand[first]
        pos = np.searchsorted(seen, dg)
        pos = np.clip(pos, 0, seen.shape[0] - 1)
        fresh = seen[pos] != dg
        if not fresh.any():
            break
        frontier = cand[fresh]
        seen = np.union1d(seen, dg[fresh])
        chunks.append(frontier)
        m = _lex_min_row(frontier)
        if tuple(m) < tuple(best):
            best = m
    allrows = np.concatenate(chunks)
    return allrows, best


def _centralizer_generators_root(group: RootGroup, rep, size: int) -> list:
    target = group.order() // size
    gens = [(g, g.inverse()) for g in group.generators]
    keys = _digest_keys(rep.row.shape[0])
    rep_row = rep.row
    transversal = {digest_pair(rep_row, keys): group.identity}
    frontier = [(rep_row, group.identity)]
    chain = StabChain(degree=rep_row.shape[0])
    found: list = []
    while frontier:
        nxt = []
        for row, u in frontier:
            x = RootElement(row)
            for g, ginv in gens:
                y = g * x * ginv
                key = digest_pair(y.row, keys)
                gu = g * u
                if key not in transversal:
                    transversal[key] = gu
                    nxt.append((y.row, gu))
                else:
                    z = transversal[key].inverse() * gu
                    if not chain.contains(z.row):
                        chain.add(z.row)
                        found.append(z)
                        if chain.order() == target:
                            return found
        frontier = nxt
    assert chain.order() == target, "centralizer closure fell short"
    return found


def _centralizer_generators_generic(group, rep, size: int) -> list:
    elems = group.enumerate_all()
    cent = [z for z in elems if z * rep == rep * z]
    assert len(cent) == group.order() // size
    return cent


def digest_pair(row: np.ndarray, keys: np.ndarray):
    d = digest_rows(row[None, :], keys)[0]
    return (int(d[0]), int(d[1]))


def _classes_by_enumeration(group) -> list[ConjClass]:
    elems = group.enumerate_all()
    elems.sort(key=lambda e: e.key())
    gens = [(g, g.inverse()) for g in group.generators]
    unseen = dict((e, None) for e in elems)
    out = []
    for e in elems:
        if e not in unseen:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g, ginv in gens:
                    y = g * x * ginv
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        for x in orbit:
            unseen.pop(x, None)
        rep = min(orbit, key=lambda x: x.key())
        out.append(ConjClass(group, rep, len(orbit), elements=frozenset(orbit)))
    assert sum(c.size for c in out) == group.order()
    out.sort(key=lambda c: (c.size, c.rep.key()))
    return out


def _classes_by_enumeration_root(group: RootGroup) -> list[ConjClass]:
    rows = group.enumerate_rows()
    rows = rows[np.lexsort(rows.T[::-1])]
    keys = _digest_keys(rows.shape[1])
    visited: set[tuple[int, int]] = set()
    out = []
    for k in range(rows.shape[0]):
        row = rows[k]
        if digest_pair(row, keys) in visited:
            continue
        crows, best = _close_class_rows(group, row)
        # scanning in lex order, the first unvisited member is the minimum
        assert tuple(best) == tuple(row)
        d = digest_rows(crows, keys)
        for i in range(d.shape[0]):
            visited.add((int(d[i, 0]), int(d[i, 1])))
        digests = sort_digests(d)
        out.append(ConjClass(group, RootElement(row.copy()), crows.shape[0], digests=digests))
    total = sum(c.size for c in out)
    assert total == group.order(), "digest collision or incomplete closure"
    out.sort(key=lambda c: (c.size, c.rep.key()))
    return out


def _classes_by_sampling(group: RootGroup, seed: int) -> list[ConjClass]:
    order = group.order()
    width = 2 * group.npos
    keys = _digest_keys(width)
    rng = np.random.default_rng(seed)
    gen_rows = [g.row for g in group.generators]
    gen_stack = np.stack(gen_rows)
    classes: list[ConjClass] = []
    covered = 0
    # first digest coordinate of every covered element, kept sorted for the
    # batched triage; misses are retried, so collisions here cost time only
    covered_keys = np.empty(0, dtype=np.uint64)

    def admit(row: np.ndarray):
        nonlocal covered, covered_keys
        rows, best = _close_class_rows(group, row)
        digests = sort_digests(digest_rows(rows, keys))
        cls = ConjClass(group, RootElement(best.copy()), rows.shape[0], digests=digests)
        classes.append(cls)
        covered += cls.size
        covered_keys = np.union1d(covered_keys, digests[:, 0])

    def is_covered(row: np.ndarray) -> bool:
        k = row.astype(np.uint64) @ keys[0]
        pos = int(np.searchsorted(covered_keys, k))
        return pos < covered_keys.shape[0] and covered_keys[pos] == k

    admit(group.identity.row)
    for seed_row in (group.longest.row, gen_rows[0], (group.longest * group.gen(1)).row):
        if not is_covered(seed_row):
            admit(seed_row)
    samples = 0
    batch, length = 2048, 40
    while covered < order:
        if samples > _MAX_SAMPLES:
            raise RuntimeError("class sampling failed to converge")
        samples += batch
        words = rng.integers(0, len(gen_rows), size=(batch, length))
        rows = np.broadcast_to(group.identity.row, (batch, width)).copy()
        for step in range(length):
            rows = np.take_along_axis(rows, gen_stack[words[:, step]], axis=1)
        # half the samples get one extra letter; without mixed parity the
        # odd classes would never be proposed
        odd = rng.integers(0, 2, size=batch).astype(bool)
        extra = rng.integers(0, len(gen_rows), size=batch)
        if odd.any():
            rows[odd] = np.take_along_axis(rows[odd], gen_stack[extra[odd]], axis=1)
        # a length-L word never reaches elements longer than L; mirroring
        # half the batch through the longest element covers the rest
        mirror = rng.integers(0, 2, size=batch).astype(bool)
        if mirror.any():
            rows[mirror] = rows[mirror][:, group.longest.row]
        dg = rows.astype(np.uint64) @ keys[0]
        pos = np.clip(np.searchsorted(covered_keys, dg), 0, covered_keys.shape[0] - 1)
        maybe_new = covered_keys[pos] != dg
        for k in np.nonzero(maybe_new)[0]:
            if not is_covered(rows[k]):
                admit(rows[k])
                if covered >= order:
                    break
    assert covered == order
    classes.sort(key=lambda c: (c.size, c.rep.key()))
    return classes


def conjugacy_classes(group, seed: int = 0,
                      enumerate_limit: int = _ENUMERATE_LIMIT) -> list[ConjClass]:
    """Full class partition, deterministic for a fixed seed.

    Classes come back sorted by (size, representative); representatives are
    the lexicographically smallest members of their class.
    """
    if isinstance(group, (DihedralGroup, ProductGroup)):
        return _classes_by_enumeration(group)
    if group.order() <= enumerate_limit:
        return _classes_by_enumeration_root(group)
    return _classes_by_sampling(group, seed)
