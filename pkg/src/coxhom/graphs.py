"""Coxeter graphs: parsing, spherical-type recognition, canonical vertex roles.

A graph is a set of vertices 1..n with an integer label m >= 3 on some edges;
absent edges mean m = 2 (commuting generators).  Recognition assigns each
connected component one of the spherical types A, B, D, E6, E7, E8, F4, H3,
H4, I2(p) and records which user vertex plays which role in the conventional
numbering of that type.

Conventions (only the first three are forced by the relations used elsewhere;
the rest follow the common textbook numbering):

* B_n: vertex 1 is the short-root end of the label-4 edge, chain 1-2-...-n.
* H3/H4: the label-5 edge is {1,2}, chain continues 2-3(-4).
* E7: chain 1-3-4-5-6-7 with vertex 2 attached to vertex 4.
* A_n: chain 1-...-n.  D_n: chain 1-...-(n-1), vertex n attached to n-2.
* E6/E8: as E7 with the chain shortened/extended.
* F4: chain 1-2-3-4, label 4 on {2,3}, vertices 3,4 short.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import GraphParseError, NonSphericalGraph, UnsupportedLabel

SIMPLE_CODE = re.compile(r"^([ABDEFH])(\d+)$")
I2_CODE = re.compile(r"^I2[:(](\d+)\)?$")


@dataclass(frozen=True)
class Component:
    """One connected component with its recognized type.

    canonical[k] is the user vertex playing role k+1 in the conventional
    numbering of the type.
    """

    family: str           # "A", "B", "D", "E", "F", "H", "I"
    rank: int             # number of vertices
    param: int            # I2 bond label p, otherwise 0
    canonical: tuple[int, ...]

    @property
    def tag(self) -> str:
        if self.family == "I":
            return f"I2({self.param})"
        if self.family == "E":
            return f"E{self.rank}"
        return f"{self.family}{self.rank}"

    @property
    def coxeter_number(self) -> int:
        f = self.family
        if f == "A":
            return self.rank + 1
        if f == "B":
            return 2 * self.rank
        if f == "D":
            return 2 * (self.rank - 1)
        if f == "E":
            return {6: 12, 7: 18, 8: 30}[self.rank]
        if f == "F":
            return 12
        if f == "H":
            return {3: 10, 4: 30}[self.rank]
        return self.param

    @property
    def group_order(self) -> int:
        f, n = self.family, self.rank
        if f == "A":
            return _factorial(n + 1)
        if f == "B":
            return 2**n * _factorial(n)
        if f == "D":
            return 2 ** (n - 1) * _factorial(n)
        if f == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        if f == "F":
            return 1152
        if f == "H":
            return {3: 120, 4: 14400}[n]
        return 2 * self.param

    @property
    def positive_root_count(self) -> int:
        return self.rank * self.coxeter_number // 2


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True)
class CoxeterGraph:
    n: int
    labels: dict[frozenset, int] = field(default_factory=dict)

    def __post_init__(self):
        for pair, m in self.labels.items():
            i, j = sorted(pair)
            if not (1 <= i < j <= self.n):
                raise GraphParseError(f"edge {set(pair)} outside 1..{self.n}")
            if m < 3:
                raise GraphParseError(f"stored labels must be >= 3, got {m}")

    def m(self, i: int, j: int) -> int:
        if i == j:
            return 1
        return self.labels.get(frozenset((i, j)), 2)

    def edges(self) -> list[tuple[int, int, int]]:
        out = []
        for pair, lab in self.labels.items():
            i, j = sorted(pair)
            out.append((i, j, lab))
        return sorted(out)

    def all_pairs(self) -> list[tuple[int, int, int]]:
        """Every generator pair with its label, including label 2."""
        return [
            (i, j, self.m(i, j))
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        ]

    def neighbors(self, i: int) -> list[int]:
        out = []
        for pair in self.labels:
            if i in pair:
                (j,) = pair - {i}
                out.append(j)
        return sorted(out)

    def vertex_components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.vertex_components()) == 1

    def components(self) -> list[Component]:
        return [self._classify(vs) for vs in self.vertex_components()]

    def code(self) -> str:
        return "x".join(c.tag.replace("(", ":").replace(")", "") for c in self.components())

    def _classify(self, vs: list[int]) -> Component:
        n = len(vs)
        sub_edges = [
            (i, j, lab) for i, j, lab in self.edges() if i in vs and j in vs
        ]
        if len(sub_edges) != n - 1:
            raise NonSphericalGraph(f"component {vs} contains a cycle")
        deg = {v: 0 for v in vs}
        for i, j, _ in sub_edges:
            deg[i] += 1
            deg[j] += 1
        if n == 1:
            return Component("A", 1, 0, (vs[0],))
        high = [(i, j, lab) for i, j, lab in sub_edges if lab >= 4]
        if len(high) > 1:
            raise NonSphericalGraph(f"component {vs} has two bonds of label >= 4")
        if n == 2:
            (i, j, lab) = sub_edges[0]
            if lab == 3:
                return Component("A", 2, 0, (i, j))
            if lab == 4:
                return Component("B", 2, 0, (i, j))
            return Component("I", 2, lab, (i, j))
        if any(d > 3 for d in deg.values()):
            raise NonSphericalGraph(f"component {vs} has a vertex of degree > 3")
        branch = [v for v in vs if deg[v] == 3]
        if len(branch) > 1:
            raise NonSphericalGraph(f"component {vs} has two branch vertices")
        if high:
            if branch:
                raise NonSphericalGraph(f"component {vs} mixes a branch with a high bond")
            return self._classify_chain_high(vs, sub_edges, deg, high[0])
        if not branch:
            return Component("A", n, 0, tuple(self._chain_order(vs, deg)))
        return self._classify_branched(vs, sub_edges, deg, branch[0])

    def _chain_order(self, vs: list[int], deg: dict[int, int], start: int | None = None) -> list[int]:
        ends = sorted(v for v in vs if deg[v] == 1)
        cur = start if start is not None else ends[0]
        order, prev = [cur], None
        while len(order) < len(vs):
            nxts = [w for w in self.neighbors(cur) if w in vs and w != prev]
            prev, cur = cur, nxts[0]
            order.append(cur)
        return order

    def _classify_chain_high(self, vs, sub_edges, deg, high) -> Component:
        i, j, lab = high
        n = len(vs)
        if lab >= 6:
            raise NonSphericalGraph(f"bond of label {lab} only allowed on two vertices")
        end_vertices = {v for v in (i, j) if deg[v] == 1}
        if lab == 5:
            if n > 4 or not end_vertices:
                raise NonSphericalGraph(f"label-5 bond placement in component {vs}")
            first = min(end_vertices)
            return Component("H", n, 0, tuple(self._chain_order(vs, deg, start=first)))
        # lab == 4
        if end_vertices:
            short = min(end_vertices)
            return Component("B", n, 0, tuple(self._chain_order(vs, deg, start=short)))
        if n != 4:
            raise NonSphericalGraph(f"interior label-4 bond in component {vs}")
        # F4: start from the degree-1 neighbor of the smaller-indexed bond vertex
        long_end = min(i, j)
        tip = [w for w in self.neighbors(long_end) if w in vs and deg[w] == 1]
        return Component("F", 4, 0, tuple(self._chain_order(vs, deg, start=tip[0])))

    def _classify_branched(self, vs, sub_edges, deg, b) -> Component:
        n = len(vs)
        arms = []
        for first in self.neighbors(b):
            if first not in vs:
                continue
            arm, prev, cur = [first], b, first
            while deg[cur] != 1:
                nxts = [w for w in self.neighbors(cur) if w in vs and w != prev]
                prev, cur = cur, nxts[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda a: (len(a), a[-1]))
        lens = [len(a) for a in arms]
        if lens[0] == 1 and lens[1] == 1:
            # D_n: long arm is the chain, the two short tips come last
            tips = sorted(a[0] for a in arms[:2])
            order = list(reversed(arms[2])) + [b, tips[0], tips[1]]
            return Component("D", n, 0, tuple(order))
        if lens[0] == 1 and lens[1] == 2 and lens[2] in (2, 3, 4):
            two, rest = arms[1], arms[2]
            order = [two[1], arms[0][0], two[0], b] + rest
            return Component("E", n, 0, tuple(order))
        raise NonSphericalGraph(f"branched component {vs} with arm lengths {lens}")


def parse_graph(code: str) -> CoxeterGraph:
    """Parse a type code ("B3", "I2:10", products via "x") or an edge list
    ("n=4;1-2:3,2-3:4")."""
    code = code.strip()
    if not code:
        raise GraphParseError("empty graph code")
    if code.startswith("n="):
        return _parse_edge_list(code)
    total, labels = 0, {}
    for part in code.split("x"):
        n, part_labels = _component_code(part.strip())
        for (i, j), m in part_labels.items():
            labels[frozenset((i + total, j + total))] = m
        total += n
    g = CoxeterGraph(total, labels)
    g.components()  # validate sphericity eagerly
    return g


def _component_code(part: str) -> tuple[int, dict[tuple[int, int], int]]:
    m = I2_CODE.match(part)
    if m:
        p = int(m.group(1))
        if p < 3:
            raise GraphParseError(f"I2 bond label must be >= 3, got {p}")
        return 2, {(1, 2): p}
    m = SIMPLE_CODE.match(part)
    if not m:
        raise GraphParseError(f"unrecognized type code {part!r}")
    fam, n = m.group(1), int(m.group(2))
    chain3 = lambda n: {(i, i + 1): 3 for i in range(1, n)}
    if fam == "A":
        if n < 1:
            raise GraphParseError("A_n needs n >= 1")
        return n, chain3(n)
    if fam == "B":
        if n < 2:
            raise GraphParseError("B_n needs n >= 2")
        labels = chain3(n)
        labels[(1, 2)] = 4
        return n, labels
    if fam == "D":
        if n < 4:
            raise GraphParseError("D_n needs n >= 4")
        labels = {(i, i + 1): 3 for i in range(1, n - 1)}
        labels[(n - 2, n)] = 3
        return n, labels
    if fam == "E":
        if n not in (6, 7, 8):
            raise GraphParseError("E_n needs n in {6,7,8}")
        labels = {(1, 3): 3, (3, 4): 3, (2, 4): 3}
        labels.update({(i, i + 1): 3 for i in range(4, n)})
        return n, labels
    if fam == "F":
        if n != 4:
            raise GraphParseError("F_n only exists for n = 4")
        return 4, {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    if fam == "H":
        if n not in (3, 4):
            raise GraphParseError("H_n needs n in {3,4}")
        labels = chain3(n)
        labels[(1, 2)] = 5
        return n, labels
    raise GraphParseError(f"unrecognized type code {part!r}")


def _parse_edge_list(code: str) -> CoxeterGraph:
    head, _, rest = code.partition(";")
    try:
        n = int(head.split("=", 1)[1])
    except (IndexError, ValueError) as exc:
        raise GraphParseError(f"bad vertex count in {head!r}") from exc
    if n < 1:
        raise GraphParseError("need at least one vertex")
    labels: dict[frozenset, int] = {}
    if rest.strip():
        for item in rest.split(","):
            item = item.strip()
            m = re.match(r"^(\d+)-(\d+)(?::(\w+))?$", item)
            if not m:
                raise GraphParseError(f"bad edge spec {item!r}")
            i, j = int(m.group(1)), int(m.group(2))
            lab_tok = m.group(3) or "3"
            if lab_tok.lower() in ("inf", "infinity", "0"):
                raise UnsupportedLabel(f"infinite bond {i}-{j} not supported")
            try:
                lab = int(lab_tok)
            except ValueError as exc:
                raise GraphParseError(f"bad label in {item!r}") from exc
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise GraphParseError(f"edge {item!r} outside 1..{n}")
            if lab < 2:
                raise UnsupportedLabel(f"label {lab} on edge {i}-{j}")
            if lab == 2:
                continue
            labels[frozenset((i, j))] = lab
    g = CoxeterGraph(n, labels)
    g.components()
    return g
