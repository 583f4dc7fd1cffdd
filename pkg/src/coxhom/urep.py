"""Affine permutation representation and the parity obstruction solver.

The Artin generators act on pairs (integer, reflection): the matching
reflection gains one on the integer coordinate, every other reflection is
conjugated.  The whole image of a word is captured by a finite "affine
permutation": a base bijection of the reflection set plus one integer
offset per reflection.  Offsets of any two words with the same Coxeter
image agree mod 2, which turns lifting questions into an integer linear
system whose mod-2 shadow this module builds and decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidHom
from .words import ArtinWord, defining_relations, tits_section
from .homs import WHom, standard_hom


class AffinePerm:
    """Offsets c and base bijection pi acting by (k, t) -> (k + c(t), pi(t)).

    Composition follows the group convention here: the right factor acts
    first, so (c, pi) * (c', pi') has offsets c'(t) + c(pi'(t)) and base
    pi o pi'.
    """

    __slots__ = ("offsets", "base")

    def __init__(self, offsets: np.ndarray, base: np.ndarray):
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.base = np.asarray(base, dtype=np.int64)

    @classmethod
    def identity(cls, size: int) -> "AffinePerm":
        return cls(np.zeros(size, dtype=np.int64), np.arange(size))

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        return AffinePerm(
            other.offsets + self.offsets[other.base],
            self.base[other.base],
        )

    def inverse(self) -> "AffinePerm":
        inv = np.argsort(self.base)
        return AffinePerm(-self.offsets[inv], inv)

    def apply(self, k: int, t: int) -> tuple[int, int]:
        return k + int(self.offsets[t]), int(self.base[t])

    def parities(self) -> np.ndarray:
        return (self.offsets & 1).astype(np.int64)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffinePerm)
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.base, other.base)
        )

    def __hash__(self):
        return hash(
            (self.offsets.tobytes(), self.base.tobytes())
        )

    def __repr__(self) -> str:
        return f"<AffinePerm on {len(self.base)} reflections>"


def conjugation_base(group, g) -> np.ndarray:
    """Permutation of the reflection list induced by conjugation with g."""
    count = len(group.reflections())
    return np.array(
        [group.conj_reflection(g, k) for k in range(count)], dtype=np.int64
    )


def u_generator(group, i: int) -> AffinePerm:
    count = len(group.reflections())
    offsets = np.zeros(count, dtype=np.int64)
    offsets[group.reflection_index(group.gen(i))] = 1
    return AffinePerm(offsets, conjugation_base(group, group.gen(i)))


def u_eval(group, word) -> AffinePerm:
    """Image of an Artin word; negative letters use the inverse generator."""
    letters = word.letters if isinstance(word, ArtinWord) else tuple(word)
    gens = {}
    out = AffinePerm.identity(len(group.reflections()))
    for x in letters:
        if x not in gens:
            base = u_generator(group, abs(x))
            gens[abs(x)] = base
            gens[-abs(x)] = base.inverse()
        out = out * gens[x]
    return out


def parity_profile(psi: WHom):
    """Per-generator base bijection and offset parities of any lift.

    The parities do not depend on the chosen lift word; this is checked
    here by evaluating a second, different lift of each image.
    """
    psi.require_valid()
    group = psi.group
    out = []
    for idx, image in enumerate(psi.images):
        first = tits_section(group, image, strategy="min")
        u = u_eval(group, first)
        second = _second_lift(group, image, first)
        v = u_eval(group, second)
        if not np.array_equal(u.base, v.base):
            raise AssertionError("lift words disagree on the base bijection")
        if not np.array_equal(u.parities(), v.parities()):
            raise AssertionError(
                f"offset parities of generator {idx + 1} depend on the lift"
            )
        out.append((u.base, u.parities()))
    return out


def _second_lift(group, image, first: ArtinWord) -> ArtinWord:
    alt = tits_section(group, image, strategy="max")
    if alt.letters != first.letters:
        return alt
    # unique reduced word: pad with a trivial-image relator instead
    graph = group.graph
    for left, right, _ in defining_relations(graph):
        pad = tuple(left) + tuple(-x for x in reversed(right))
        return ArtinWord(graph, first.letters + pad)
    return ArtinWord(graph, first.letters + (1, -1))


# ---------------------------------------------------------------------------
# obstruction systems


@dataclass
class OffsetEquation:
    support: int          # variable bitmask after reduction
    constant: int         # 0 or 1
    relation: tuple       # (i, j, m) provenance
    reflection: int       # index of t in the reflection list
    raw_coeffs: dict      # variable index -> integer coefficient (times 2)
    raw_constant: int


@dataclass
class OffsetSystem:
    group: object
    var_count: int
    equations: list

    def var_index(self, gen: int, reflection: int) -> int:
        return (gen - 1) * len(self.group.reflections()) + reflection

    def dump_rows(self) -> list[str]:
        """Plain 0/1 rows, last column the constant bit."""
        out = []
        for eq in self.equations:
            bits = [
                "1" if eq.support >> v & 1 else "0"
                for v in range(self.var_count)
            ]
            bits.append(str(eq.constant))
            out.append("".join(bits))
        return out


@dataclass
class ObstructionResult:
    verdict: str                   # "Obstructed" | "NoParityObstruction"
    system: OffsetSystem
    certificate: tuple = ()        # indices into system.equations

    def verify(self) -> bool:
        """An obstruction certificate must sum, over GF(2), to 0 = 1."""
        if self.verdict != "Obstructed":
            return True
        support = 0
        constant = 0
        for idx in self.certificate:
            eq = self.system.equations[idx]
            support ^= eq.support
            constant ^= eq.constant
        return support == 0 and constant == 1


def build_system(psi: WHom) -> OffsetSystem:
    """One integer equation per defining relation and reflection.

    A lift of psi sends generator i to a word whose affine permutation has
    base pi_i (conjugation by the image) and offsets p_i + 2 x_i with p_i
    the parity profile and x_i free integers.  Equality of both relation
    sides at each reflection t yields 2 * (signed transport counts) x = d
    with d the parity difference; each equation is divided by the largest
    factor that keeps it integral and then kept as its mod-2 shadow.
    """
    group = psi.group
    profiles = parity_profile(psi)
    count = len(group.reflections())
    nvars = group.rank * count
    equations = []
    for left, right, key in defining_relations(group.graph):
        coeffs = np.zeros((nvars, count), dtype=np.int64)
        const = np.zeros(count, dtype=np.int64)
        base_l = _accumulate(profiles, left, count, coeffs, const, +1)
        base_r = _accumulate(profiles, right, count, coeffs, const, -1)
        if not np.array_equal(base_l, base_r):
            raise InvalidHom(f"images fail defining relation {key}")
        for t in range(count):
            eq = _reduce_equation(coeffs[:, t], -int(const[t]), key, t)
            if eq is not None:
                equations.append(eq)
    return OffsetSystem(group=group, var_count=nvars, equations=equations)


def _accumulate(profiles, letters, count, coeffs, const, sign):
    """Add one relation side's offset contributions; returns its base.

    A factor at position k sees each reflection through the transport of
    the factors to its right, so the walk runs from the last letter
    backwards; once every letter is folded in, the transport is the base
    bijection of the whole side.
    """
    transport = np.arange(count)
    for pos in range(len(letters) - 1, -1, -1):
        gen = letters[pos]
        pi, parity = profiles[gen - 1]
        rows = (gen - 1) * count + transport
        np.add.at(coeffs, (rows, np.arange(count)), 2 * sign)
        const += sign * parity[transport]
        transport = pi[transport]
    return transport


def _reduce_equation(column, d, key, t):
    """Divide by the content when possible, else by the shared power of
    two, then take the mod-2 shadow.  Returns None for trivial 0 = 0."""
    nz = np.nonzero(column)[0]
    if len(nz) == 0:
        if d % 2 == 0:
            return None
        return OffsetEquation(0, 1, key, t, {}, d)
    g = 0
    for v in nz:
        g = _gcd(g, abs(int(column[v])))
    if d % g == 0:
        divisor = g
    else:
        divisor = 1 << min(_two_adic(g), _two_adic(d))
    support = 0
    for v in nz:
        if (int(column[v]) // divisor) % 2 != 0:
            support |= 1 << int(v)
    constant = (d // divisor) % 2
    if support == 0 and constant == 0:
        return None
    return OffsetEquation(
        support,
        constant,
        key,
        t,
        {int(v): int(column[v]) for v in nz},
        d,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _two_adic(x: int) -> int:
    x = abs(x)
    out = 0
    while x % 2 == 0:
        x //= 2
        out += 1
    return out


def obstruction(psi: WHom) -> ObstructionResult:
    """Decide mod-2 consistency of the lift system for psi.

    Obstructed means no endomorphism of the Artin group projects onto
    psi; NoParityObstruction makes no existence claim.
    """
    system = build_system(psi)
    pivots = {}  # pivot variable -> (support, constant, combination)
    for idx, eq in enumerate(system.equations):
        support, constant, combo = eq.support, eq.constant, 1 << idx
        while support:
            pivot = support.bit_length() - 1
            if pivot not in pivots:
                pivots[pivot] = (support, constant, combo)
                break
            ps, pc, pm = pivots[pivot]
            support ^= ps
            constant ^= pc
            combo ^= pm
        else:
            if constant:
                certificate = tuple(
                    i for i in range(idx + 1) if combo >> i & 1
                )
                result = ObstructionResult("Obstructed", system, certificate)
                if not result.verify():
                    raise AssertionError("certificate failed re-verification")
                return result
    return ObstructionResult("NoParityObstruction", system)


# ---------------------------------------------------------------------------
# report over every extraordinary class


@dataclass
class TheoremRow:
    name: str
    verdict: str
    equation_count: int
    certificate_size: int


@dataclass
class TheoremReport:
    graph: str
    vacuous: bool
    rows: list = field(default_factory=list)
    results: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "vacuous": self.vacuous,
            "rows": [
                {
                    "name": row.name,
                    "verdict": row.verdict,
                    "equations": row.equation_count,
                    "certificate_size": row.certificate_size,
                }
                for row in self.rows
            ],
        }


def theorem31_report(group, bound: int = 10_000) -> TheoremReport:
    """Run the obstruction over every extraordinary ucep class.

    Classes come from exhaustive classification when the group is small
    enough, otherwise from the built-in catalog.
    """
    from .errors import GroupTooLarge, NoCatalogEntry
    from .homs import catalog, classify_uceps

    targets = []
    if group.order() <= bound:
        report = classify_uceps(group, mode="conjugacy", bound=bound)
        unnamed = 0
        for row in report.rows:
            if row.ordinary:
                continue
            name = row.name
            if name is None:
                unnamed += 1
                name = f"extra{unnamed}"
            targets.append((name, row.hom))
    else:
        try:
            built_in = catalog(group)
        except NoCatalogEntry:
            raise GroupTooLarge(
                f"order {group.order()} exceeds bound {bound} and no "
                "built-in maps exist"
            )
        for name, hom in built_in.items():
            if not hom.is_ordinary():
                targets.append((name, hom))

    out = TheoremReport(graph=group.graph.code(), vacuous=not targets)
    for name, hom in targets:
        result = obstruction(hom)
        out.results.append(result)
        out.rows.append(
            TheoremRow(
                name=name,
                verdict=result.verdict,
                equation_count=len(result.system.equations),
                certificate_size=len(result.certificate),
            )
        )
    return out


def standard_unobstructed(group) -> ObstructionResult:
    """The identity endomorphism lifts the standard map, so its system
    must always be consistent; exposed for the test suites."""
    return obstruction(standard_hom(group))
