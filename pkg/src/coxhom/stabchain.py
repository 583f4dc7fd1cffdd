"""Deterministic Schreier-Sims stabilizer chain for permutation rows.

Used for exact group orders and membership tests on the root action.  Rows
are uint16 arrays; composition is (a o b)(r) = a[b[r]].  Each chain node
keeps the orbit of its base point with a transversal; the stabilizer of the
base is generated by sifted Schreier generators, recursively.
"""

from __future__ import annotations

import numpy as np


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[b]


def _invert(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(a.shape[0], dtype=a.dtype)
    return out


class StabChain:
    def __init__(self, gens=(), degree: int | None = None):
        if degree is None:
            gens = [np.asarray(g, dtype=np.uint16) for g in gens]
            if not gens:
                raise ValueError("need degree when no generators are given")
            degree = gens[0].shape[0]
        self.degree = int(degree)
        self._identity = np.arange(self.degree, dtype=np.uint16)
        self.base: int = -1
        self.gens: list[np.ndarray] = []
        self.orbit: dict[int, np.ndarray] = {}
        self.stab: StabChain | None = None
        for g in gens:
            self.add(np.asarray(g, dtype=np.uint16))

    def _is_identity(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(g, self._identity))

    def contains(self, g) -> bool:
        g = np.asarray(g, dtype=np.uint16)
        node: StabChain | None = self
        while node is not None and node.base >= 0:
            t = node.orbit.get(int(g[node.base]))
            if t is None:
                return False
            g = _compose(_invert(t), g)
            node = node.stab
        return self._is_identity(g)

    def order(self) -> int:
        out, node = 1, self
        while node is not None and node.base >= 0:
            out *= len(node.orbit)
            node = node.stab
        return out

    def add(self, g) -> None:
        g = np.asarray(g, dtype=np.uint16)
        if self._is_identity(g) or self.contains(g):
            return
        if self.base < 0:
            moved = np.nonzero(g != self._identity)[0]
            self.base = int(moved[0])
            self.orbit = {self.base: self._identity}
        self.gens.append(g)
        self._rebuild()

    def _rebuild(self) -> None:
        self.orbit = {self.base: self._identity}
        frontier = [self.base]
        while frontier:
            nxt = []
            for p in frontier:
                t = self.orbit[p]
                for s in self.gens:
                    q = int(s[p])
                    if q not in self.orbit:
                        self.orbit[q] = _compose(s, t)
                        nxt.append(q)
            frontier = nxt
        if self.stab is None:
            self.stab = StabChain(degree=self.degree)
        for p, t in self.orbit.items():
            for s in self.gens:
                u = self.orbit[int(s[p])]
                schreier = _compose(_invert(u), _compose(s, t))
                self.stab.add(schreier)
