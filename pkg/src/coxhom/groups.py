"""Concrete group backends for finite Coxeter groups.

Three interchangeable backends:

* ``RootGroup`` realizes a connected crystallographic-or-golden graph as
  permutations of its root index set (uint16 rows of length 2N).
* ``DihedralGroup`` handles I2(p) as pairs (rotation, flip) mod p, which
  keeps large p cheap and avoids non-quadratic root coordinates.
* ``ProductGroup`` glues component backends for disconnected graphs.

Elements are self-contained values: equality, hashing and multiplication
never consult the group.  The convention throughout is (w1 * w2)(r) =
w1(w2(r)), so words multiply out with the rightmost letter acting first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DisconnectedGraph, GroupTooLarge, InvalidWord
from .graphs import CoxeterGraph
from .roots import RootSystem, build_root_system
from .stabchain import StabChain


class RootElement:
    """Permutation of the 2N root indices, stored as one uint16 row."""

    __slots__ = ("row",)

    def __init__(self, row: np.ndarray):
        self.row = row

    def __mul__(self, other: "RootElement") -> "RootElement":
        return RootElement(self.row[other.row])

    def inverse(self) -> "RootElement":
        out = np.empty_like(self.row)
        out[self.row] = np.arange(self.row.shape[0], dtype=self.row.dtype)
        return RootElement(out)

    def key(self) -> bytes:
        # big-endian so byte order agrees with lexicographic order on indices
        return self.row.astype(">u2").tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, RootElement) and np.array_equal(self.row, other.row)

    def __hash__(self) -> int:
        return hash(self.row.tobytes())

    def __repr__(self) -> str:
        return f"RootElement<{self.row.shape[0]}>"


class DihedralElement:
    """Element of I2(p): rotation count and flip bit, composed mod p."""

    __slots__ = ("p", "rot", "flip")

    def __init__(self, p: int, rot: int, flip: int):
        self.p = p
        self.rot = rot % p
        self.flip = flip & 1

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        sign = -1 if self.flip else 1
        return DihedralElement(self.p, self.rot + sign * other.rot, self.flip ^ other.flip)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return DihedralElement(self.p, self.rot, 1)
        return DihedralElement(self.p, -self.rot, 0)

    def key(self) -> bytes:
        return bytes(((self.rot >> 8) & 0xFF, self.rot & 0xFF, self.flip))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DihedralElement)
            and self.p == other.p
            and self.rot == other.rot
            and self.flip == other.flip
        )

    def __hash__(self) -> int:
        return hash((self.p, self.rot, self.flip))

    def __repr__(self) -> str:
        return f"DihedralElement(p={self.p}, rot={self.rot}, flip={self.flip})"


class ProductElement:
    """Tuple of component elements, multiplied slotwise."""

    __slots__ = ("parts",)

    def __init__(self, parts: tuple):
        self.parts = parts

    def __mul__(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(tuple(a * b for a, b in zip(self.parts, other.parts)))

    def inverse(self) -> "ProductElement":
        return ProductElement(tuple(a.inverse() for a in self.parts))

    def key(self) -> bytes:
        return b"|".join(a.key() for a in self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductElement) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"ProductElement{self.parts!r}"


def _word_product(group, word):
    out = group.identity
    for i in word:
        if i == 0:
            raise InvalidWord("generator indices are 1-based, got 0")
        out = out * group.gen(abs(i))
    return out


class RootGroup:
    """Coxeter group acting on the root index set of a connected graph."""

    def __init__(self, graph: CoxeterGraph):
        comps = graph.components()
        if len(comps) != 1:
            raise DisconnectedGraph("RootGroup needs a connected graph")
        self.graph = graph
        self.component = comps[0]
        self.vertices = tuple(range(1, graph.n + 1))
        self.root_system: RootSystem = build_root_system(graph)
        self.npos = len(self.root_system.pos_roots)
        n = graph.n
        self.simple_index = [0] + list(self.root_system.simple_indices)
        self._gens = [RootElement(self.root_system.gen_tables[i]) for i in range(n)]
        self.identity = RootElement(np.arange(2 * self.npos, dtype=np.uint16))

    @property
    def rank(self) -> int:
        return self.graph.n

    def gen(self, i: int) -> RootElement:
        return self._gens[i - 1]

    @property
    def generators(self) -> list[RootElement]:
        return list(self._gens)

    def word_to_element(self, word) -> RootElement:
        return _word_product(self, word)

    def order(self) -> int:
        return self.component.group_order

    def length(self, w: RootElement) -> int:
        return int(np.count_nonzero(w.row[: self.npos] >= self.npos))

    def is_identity(self, w: RootElement) -> bool:
        return w == self.identity

    def right_descents(self, w: RootElement) -> list[int]:
        return [i for i in self.vertices if w.row[self.simple_index[i]] >= self.npos]

    def reduced_word(self, w: RootElement, strategy: str = "min") -> tuple[int, ...]:
        """Reduced word built by left descents; "min" picks the smallest
        descent each step (lexicographically least word), "max" the largest."""
        scan = self.vertices if strategy == "min" else tuple(reversed(self.vertices))
        word = []
        inv = w.inverse()
        cur = w
        while cur != self.identity:
            for i in scan:
                if inv.row[self.simple_index[i]] >= self.npos:
                    word.append(i)
                    cur = self.gen(i) * cur
                    inv = inv * self.gen(i)
                    break
            else:
                raise AssertionError("non-identity element with no descent")
        return tuple(word)

    @cached_property
    def longest(self) -> RootElement:
        w = self.identity
        while True:
            for i in self.vertices:
                if w.row[self.simple_index[i]] < self.npos:
                    w = w * self.gen(i)
                    break
            else:
                break
        assert self.length(w) == self.npos
        return w

    def longest_element(self) -> RootElement:
        return self.longest

    @cached_property
    def _xi(self) -> dict[int, int]:
        w0 = self.longest
        out = {}
        for i in self.vertices:
            k = self.fold(int(w0.row[self.simple_index[i]]))
            for j in self.vertices:
                if self.simple_index[j] == k:
                    out[i] = j
                    break
            else:
                raise AssertionError("conjugate of a simple root is not simple")
        return out

    def xi(self) -> dict[int, int]:
        return dict(self._xi)

    def center(self) -> list[RootElement]:
        if all(j == i for i, j in self._xi.items()):
            return [self.identity, self.longest]
        return [self.identity]

    def fold(self, index: int) -> int:
        return index - self.npos if index >= self.npos else index

    @cached_property
    def _reflections(self) -> list[RootElement]:
        return [RootElement(self.root_system.reflection_tables[k]) for k in range(self.npos)]

    def reflections(self) -> list[RootElement]:
        return list(self._reflections)

    @cached_property
    def _reflection_lookup(self) -> dict[bytes, int]:
        return {t.key(): k for k, t in enumerate(self._reflections)}

    def reflection_index(self, w: RootElement) -> int | None:
        return self._reflection_lookup.get(w.key())

    def reflection(self, k: int) -> RootElement:
        return self._reflections[k]

    def conj_reflection(self, g: RootElement, k: int) -> int:
        """Index of g s_k g^{-1}, read off the image of root k."""
        return self.fold(int(g.row[k]))

    def odd_blocks(self) -> list[frozenset[int]]:
        adj = {i: set() for i in self.vertices}
        for (i, j), m in self.graph.labels.items():
            if m % 2 == 1:
                adj[i].add(j)
                adj[j].add(i)
        seen: set[int] = set()
        blocks = []
        for i in self.vertices:
            if i in seen:
                continue
            block, frontier = {i}, [i]
            while frontier:
                v = frontier.pop()
                for u in adj[v]:
                    if u not in block:
                        block.add(u)
                        frontier.append(u)
            seen |= block
            blocks.append(frozenset(block))
        return blocks

    def sign_characters(self) -> list[dict[int, int]]:
        """All homomorphisms to {1, -1} as vertex -> value maps, trivial first."""
        blocks = self.odd_blocks()
        out = []
        for mask in range(1 << len(blocks)):
            chi = {}
            for b, block in enumerate(blocks):
                val = -1 if (mask >> b) & 1 else 1
                for i in block:
                    chi[i] = val
            out.append(chi)
        return out

    def character_value(self, chi: dict[int, int], w: RootElement) -> int:
        out = 1
        for i in self.reduced_word(w):
            out *= chi[i]
        return out

    def subgroup_chain(self, elements) -> StabChain:
        return StabChain([e.row for e in elements], degree=2 * self.npos)

    def subgroup(self, elements) -> "_ChainSubgroup":
        return _ChainSubgroup(self.subgroup_chain(elements))

    def subgroup_order(self, elements) -> int:
        return self.subgroup_chain(elements).order()

    def enumerate_rows(self, max_order: int | None = None) -> np.ndarray:
        """All group elements as one (order, 2N) array, in BFS order."""
        if max_order is not None and self.order() > max_order:
            raise GroupTooLarge(f"order {self.order()} exceeds limit {max_order}")
        from ._kernels import RowSet

        width = 2 * self.npos
        seen = RowSet(width)
        rows = self.identity.row[None, :].copy()
        seen.add_new(rows)
        out = [rows]
        frontier = rows
        gen_rows = np.stack([g.row for g in self._gens])
        while frontier.shape[0]:
            nxt = []
            for g in gen_rows:
                prod = frontier[:, g]
                fresh = seen.add_new(prod)
                if fresh.any():
                    nxt.append(prod[fresh])
            if not nxt:
                break
            frontier = np.unique(np.concatenate(nxt), axis=0)
            out.append(frontier)
        allrows = np.concatenate(out)
        assert allrows.shape[0] == self.order()
        return allrows

    def enumerate_all(self, max_order: int | None = None) -> list[RootElement]:
        return [RootElement(r) for r in self.enumerate_rows(max_order)]


class DihedralGroup:
    """I2(p) for p >= 3: rotations and flips of the regular p-gon."""

    def __init__(self, p: int, vertices: tuple[int, int] = (1, 2), graph: CoxeterGraph | None = None):
        if p < 3:
            raise ValueError("dihedral label must be at least 3")
        self.p = p
        self.vertices = vertices
        if graph is None:
            graph = CoxeterGraph(2, {frozenset((1, 2)): p})
        self.graph = graph
        self.identity = DihedralElement(p, 0, 0)
        self._gens = [DihedralElement(p, 0, 1), DihedralElement(p, p - 1, 1)]
        self._gen_of = {vertices[0]: 0, vertices[1]: 1}

    @property
    def rank(self) -> int:
        return 2

    def gen(self, i: int) -> DihedralElement:
        return self._gens[self._gen_of[i]]

    @property
    def generators(self) -> list[DihedralElement]:
        return list(self._gens)

    def word_to_element(self, word) -> DihedralElement:
        return _word_product(self, word)

    def order(self) -> int:
        return 2 * self.p

    @cached_property
    def _length(self) -> dict[DihedralElement, int]:
        table = {self.identity: 0}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for g in self._gens:
                    u = w * g
                    if u not in table:
                        table[u] = table[w] + 1
                        nxt.append(u)
            frontier = nxt
        assert len(table) == 2 * self.p
        return table

    def length(self, w: DihedralElement) -> int:
        return self._length[w]

    def is_identity(self, w: DihedralElement) -> bool:
        return w == self.identity

    def right_descents(self, w: DihedralElement) -> list[int]:
        lw = self.length(w)
        return [i for i in self.vertices if self.length(w * self.gen(i)) < lw]

    def reduced_word(self, w: DihedralElement, strategy: str = "min") -> tuple[int, ...]:
        scan = self.vertices if strategy == "min" else tuple(reversed(self.vertices))
        word = []
        cur = w
        while cur != self.identity:
            lw = self.length(cur)
            for i in scan:
                if self.length(self.gen(i) * cur) < lw:
                    word.append(i)
                    cur = self.gen(i) * cur
                    break
            else:
                raise AssertionError("non-identity element with no descent")
        return tuple(word)

    @cached_property
    def longest(self) -> DihedralElement:
        w = max(self._length, key=lambda u: (self._length[u], u.key()))
        assert self._length[w] == self.p
        return w

    def longest_element(self) -> DihedralElement:
        return self.longest

    def xi(self) -> dict[int, int]:
        w0 = self.longest
        out = {}
        for i in self.vertices:
            t = w0 * self.gen(i) * w0.inverse()
            for j in self.vertices:
                if t == self.gen(j):
                    out[i] = j
                    break
            else:
                raise AssertionError("conjugate of a generator is not a generator")
        return out

    def center(self) -> list[DihedralElement]:
        if self.p % 2 == 0:
            return [self.identity, self.longest]
        return [self.identity]

    def reflections(self) -> list[DihedralElement]:
        return [DihedralElement(self.p, k, 1) for k in range(self.p)]

    def reflection_index(self, w: DihedralElement) -> int | None:
        return w.rot if w.flip else None

    def reflection(self, k: int) -> DihedralElement:
        return DihedralElement(self.p, k, 1)

    def conj_reflection(self, g: DihedralElement, k: int) -> int:
        t = g * DihedralElement(self.p, k, 1) * g.inverse()
        assert t.flip == 1
        return t.rot

    def odd_blocks(self) -> list[frozenset[int]]:
        if self.p % 2 == 1:
            return [frozenset(self.vertices)]
        return [frozenset((self.vertices[0],)), frozenset((self.vertices[1],))]

    def sign_characters(self) -> list[dict[int, int]]:
        blocks = self.odd_blocks()
        out = []
        for mask in range(1 << len(blocks)):
            chi = {}
            for b, block in enumerate(blocks):
                val = -1 if (mask >> b) & 1 else 1
                for i in block:
                    chi[i] = val
            out.append(chi)
        return out

    def character_value(self, chi: dict[int, int], w: DihedralElement) -> int:
        out = 1
        for i in self.reduced_word(w):
            out *= chi[i]
        return out

    def subgroup(self, elements) -> "_SetSubgroup":
        return _SetSubgroup(_closure(self.identity, elements, cap=self.order()))

    def subgroup_order(self, elements) -> int:
        return len(_closure(self.identity, elements, cap=self.order()))

    def enumerate_all(self, max_order: int | None = None) -> list[DihedralElement]:
        if max_order is not None and self.order() > max_order:
            raise GroupTooLarge(f"order {self.order()} exceeds limit {max_order}")
        out = [DihedralElement(self.p, r, 0) for r in range(self.p)]
        out += [DihedralElement(self.p, r, 1) for r in range(self.p)]
        return out


class _ChainSubgroup:
    """Subgroup handle backed by a stabilizer chain."""

    def __init__(self, chain: StabChain):
        self.chain = chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, element) -> bool:
        return self.chain.contains(element.row)


class _SetSubgroup:
    """Subgroup handle backed by an explicit closure set."""

    def __init__(self, elements):
        self.elements = frozenset(elements)

    def order(self) -> int:
        return len(self.elements)

    def contains(self, element) -> bool:
        return element in self.elements


def _closure(identity, elements, cap: int | None = None):
    gens = [e for e in elements]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w * g
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if cap is not None and len(seen) > cap:
                        raise GroupTooLarge(f"closure exceeded {cap} elements")
        frontier = nxt
    return seen


@dataclass(frozen=True)
class _Slot:
    vertices: tuple[int, ...]
    group: object


class ProductGroup:
    """Direct product of component backends for a disconnected graph."""

    def __init__(self, slots: list[_Slot], graph: CoxeterGraph):
        self.slots = slots
        self.graph = graph
        self.vertices = tuple(range(1, graph.n + 1))
        self._slot_of: dict[int, tuple[int, int]] = {}
        for s, slot in enumerate(slots):
            for local, v in enumerate(slot.vertices):
                self._slot_of[v] = (s, local)
        self.identity = ProductElement(tuple(s.group.identity for s in slots))

    @property
    def rank(self) -> int:
        return self.graph.n

    def gen(self, i: int) -> ProductElement:
        s, local = self._slot_of[i]
        parts = []
        for k, slot in enumerate(self.slots):
            if k == s:
                parts.append(slot.group.gen(slot.group.vertices[local]))
            else:
                parts.append(slot.group.identity)
        return ProductElement(tuple(parts))

    @property
    def generators(self) -> list[ProductElement]:
        return [self.gen(i) for i in self.vertices]

    def word_to_element(self, word) -> ProductElement:
        return _word_product(self, word)

    def order(self) -> int:
        out = 1
        for slot in self.slots:
            out *= slot.group.order()
        return out

    def length(self, w: ProductElement) -> int:
        return sum(s.group.length(part) for s, part in zip(self.slots, w.parts))

    def is_identity(self, w: ProductElement) -> bool:
        return w == self.identity

    def reduced_word(self, w: ProductElement, strategy: str = "min") -> tuple[int, ...]:
        word: list[int] = []
        for slot, part in zip(self.slots, w.parts):
            local_word = slot.group.reduced_word(part, strategy)
            lookup = {v: slot.vertices[k] for k, v in enumerate(slot.group.vertices)}
            word.extend(lookup[i] for i in local_word)
        return tuple(word)

    @cached_property
    def longest(self) -> ProductElement:
        return ProductElement(tuple(s.group.longest_element() for s in self.slots))

    def longest_element(self) -> ProductElement:
        return self.longest

    def xi(self):
        raise DisconnectedGraph("work per connected component")

    def center(self):
        raise DisconnectedGraph("work per connected component")

    def reflections(self):
        raise DisconnectedGraph("work per connected component")

    def sign_characters(self):
        raise DisconnectedGraph("work per connected component")

    def subgroup(self, elements) -> "_SetSubgroup":
        return _SetSubgroup(_closure(self.identity, elements, cap=self.order()))

    def subgroup_order(self, elements) -> int:
        return len(_closure(self.identity, elements, cap=self.order()))

    def enumerate_all(self, max_order: int | None = None) -> list[ProductElement]:
        if max_order is not None and self.order() > max_order:
            raise GroupTooLarge(f"order {self.order()} exceeds limit {max_order}")
        elems = [self.identity]
        for s, slot in enumerate(self.slots):
            part_elems = slot.group.enumerate_all()
            elems = [
                ProductElement(e.parts[:s] + (p,) + e.parts[s + 1 :])
                for e in elems
                for p in part_elems
            ]
        return elems


def _restrict(graph: CoxeterGraph, vertices: tuple[int, ...]) -> CoxeterGraph:
    relabel = {v: k + 1 for k, v in enumerate(vertices)}
    labels = {}
    for (i, j), m in graph.labels.items():
        if i in relabel and j in relabel:
            labels[frozenset((relabel[i], relabel[j]))] = m
    return CoxeterGraph(len(vertices), labels)


def build_group(graph: CoxeterGraph):
    """Pick a backend for the graph: dihedral, root permutation, or product."""
    comps = graph.components()
    if len(comps) == 1:
        c = comps[0]
        if c.family == "I":
            return DihedralGroup(c.param, vertices=c.canonical, graph=graph)
        return RootGroup(graph)
    slots = []
    for c in comps:
        verts = tuple(sorted(set(c.canonical)))
        sub = _restrict(graph, verts)
        relabel = {v: k + 1 for k, v in enumerate(verts)}
        subcomp = sub.components()[0]
        if subcomp.family == "I":
            g = DihedralGroup(subcomp.param, vertices=subcomp.canonical, graph=sub)
            local_order = subcomp.canonical
        else:
            g = RootGroup(sub)
            local_order = g.vertices
        inv = {k + 1: v for k, v in enumerate(verts)}
        slot_vertices = tuple(inv[i] for i in local_order)
        slots.append(_Slot(vertices=slot_vertices, group=g))
    return ProductGroup(slots, graph)
