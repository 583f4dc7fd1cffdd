"""Root systems in the simple-root basis, with exact coefficients.

Crystallographic components keep integer coordinates; pentagonal components
(H3, H4, I2(5)) use GoldenInt coordinates.  Every root is stored as a tuple of
coefficients over the simple roots of its component, so reflection images can
be looked up exactly and the group acts by permuting root indices.

Index layout: positive roots get 0..N-1 sorted by (height, coordinates),
and index N+k always holds the negative of index k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonSphericalGraph
from .golden import PHI, GoldenInt
from .graphs import CoxeterGraph


def _exact_div(num, den: int):
    if isinstance(num, GoldenInt):
        if num.a % den or num.b % den:
            raise ArithmeticError(f"non-exact division {num}/{den}")
        return GoldenInt(num.a // den, num.b // den)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"non-exact division {num}/{den}")
    return q


def cartan_data(graph: CoxeterGraph) -> tuple[list[list], list[int], bool]:
    """Cartan-style matrix C with s_i(a_j) = a_j - C[i][j] a_i, squared
    lengths per vertex, and whether GoldenInt coefficients are needed."""
    n = graph.n
    golden = any(lab == 5 for _, _, lab in graph.edges())
    if any(lab > 5 for _, _, lab in graph.edges()):
        raise NonSphericalGraph("root backend only supports labels up to 5")
    lengths = [2] * (n + 1)  # 1-based, squared lengths
    for comp in graph.components():
        if comp.family == "B":
            lengths[comp.canonical[0]] = 1
        elif comp.family == "F":
            lengths[comp.canonical[2]] = 1
            lengths[comp.canonical[3]] = 1
    zero: object = GoldenInt(0) if golden else 0
    two: object = GoldenInt(2) if golden else 2
    C = [[zero] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = two
    for u, v, lab in graph.edges():
        iu, iv = u - 1, v - 1
        if lab == 3:
            mone = GoldenInt(-1) if golden else -1
            C[iu][iv] = mone
            C[iv][iu] = mone
        elif lab == 4:
            # 2(a_v,a_u) = -2; entry is that over the squared length of the base
            C[iu][iv] = _exact_div(-2, lengths[u])
            C[iv][iu] = _exact_div(-2, lengths[v])
            if golden:
                C[iu][iv] = GoldenInt(C[iu][iv])
                C[iv][iu] = GoldenInt(C[iv][iu])
        elif lab == 5:
            C[iu][iv] = -PHI
            C[iv][iu] = -PHI
    return C, lengths, golden


@dataclass
class RootSystem:
    graph: CoxeterGraph
    cartan: list[list]
    lengths: list[int]
    pos_roots: list[tuple]
    index: dict
    simple_indices: list[int]      # position of each simple root, by vertex order
    gen_tables: np.ndarray         # (n, 2N) uint16
    reflection_tables: np.ndarray  # (N, 2N) uint16

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_positive(self) -> int:
        return len(self.pos_roots)

    def root_at(self, r: int) -> tuple:
        if r < self.num_positive:
            return self.pos_roots[r]
        return tuple(-x for x in self.pos_roots[r - self.num_positive])


def _apply_simple(C, i: int, vec: tuple) -> tuple:
    coeff = sum(C[i][j] * vec[j] for j in range(len(vec)) if not _is_zero(vec[j]))
    if _is_zero(coeff):
        return vec
    out = list(vec)
    out[i] = out[i] - coeff
    return tuple(out)


def _is_zero(x) -> bool:
    if isinstance(x, GoldenInt):
        return x.a == 0 and x.b == 0
    return x == 0


def _sign(x) -> int:
    if isinstance(x, GoldenInt):
        return x.sign()
    return (x > 0) - (x < 0)


def _height(vec):
    total = vec[0]
    for x in vec[1:]:
        total = total + x
    return total


def build_root_system(graph: CoxeterGraph) -> RootSystem:
    n = graph.n
    C, lengths, golden = cartan_data(graph)
    one: object = GoldenInt(1) if golden else 1
    zero: object = GoldenInt(0) if golden else 0
    simples = [
        tuple(one if j == i else zero for j in range(n)) for i in range(n)
    ]
    all_roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for vec in frontier:
            for i in range(n):
                img = _apply_simple(C, i, vec)
                if img not in all_roots:
                    all_roots.add(img)
                    nxt.append(img)
        frontier = nxt
    positives = []
    for vec in all_roots:
        signs = {_sign(x) for x in vec if not _is_zero(x)}
        if signs == {1}:
            positives.append(vec)
        elif signs != {-1}:
            raise AssertionError(f"root {vec} with mixed signs")
    if 2 * len(positives) != len(all_roots):
        raise AssertionError("positive roots do not pair off with negatives")
    positives.sort(key=lambda v: (_height(v), v))
    N = len(positives)
    index: dict = {}
    for k, vec in enumerate(positives):
        index[vec] = k
        index[tuple(-x for x in vec)] = N + k

    def _lookup(vec) -> int:
        return index[vec]

    gen_tables = np.empty((n, 2 * N), dtype=np.uint16)
    roots_by_idx = positives + [tuple(-x for x in p) for p in positives]
    for i in range(n):
        for r, vec in enumerate(roots_by_idx):
            gen_tables[i, r] = _lookup(_apply_simple(C, i, vec))

    # 2(a_i, a_j) from the Cartan entries and lengths
    twoG = [[C[i][j] * lengths[i + 1] for j in range(n)] for i in range(n)]
    reflection_tables = np.empty((N, 2 * N), dtype=np.uint16)
    for k, beta in enumerate(positives):
        den = _dot2(beta, beta, twoG)  # = 2(beta, beta)
        for r, vec in enumerate(roots_by_idx):
            num = _dot2(vec, beta, twoG)  # = 2(vec, beta)
            coeff = _exact_div_ring(num + num, den)
            if _is_zero(coeff):
                reflection_tables[k, r] = r
                continue
            img = tuple(vec[j] - coeff * beta[j] for j in range(n))
            reflection_tables[k, r] = _lookup(img)
    simple_indices = [index[s] for s in simples]
    return RootSystem(
        graph, C, lengths, positives, index, simple_indices, gen_tables, reflection_tables
    )


def _dot2(u, v, twoG):
    total = None
    for i, ui in enumerate(u):
        if _is_zero(ui):
            continue
        for j, vj in enumerate(v):
            if _is_zero(vj):
                continue
            term = ui * vj * twoG[i][j]
            total = term if total is None else total + term
    return total if total is not None else 0


def _exact_div_ring(num, den):
    """num/den where den is a plain or golden integer arising as 2|beta|^2."""
    if isinstance(den, GoldenInt):
        # H components: every root has squared length 2, so den = 4
        if den.b != 0:
            raise ArithmeticError(f"unexpected denominator {den}")
        den = den.a
    return _exact_div(num, den)
