"""Generator-image homomorphisms and their classification up to symmetry.

A homomorphism from the Artin system of a graph into its Coxeter group is
recorded by the tuple of generator images.  Surjectivity up to the center
is decided from the image subgroup order plus one center membership test;
classification is by simultaneous conjugation, optionally coarsened by
composing with a fixed set of group automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conjugacy import conjugacy_classes
from .errors import (
    GroupTooLarge,
    InvalidAutomorphism,
    InvalidHom,
    NoCatalogEntry,
    RelationViolation,
)
from .words import check_relations, mu_eval


class WHom:
    """Tuple of generator images in a Coxeter group, with the induced map's
    predicates.  images[v-1] is the image of the generator at vertex v."""

    def __init__(self, group, images, name: str | None = None):
        images = tuple(images)
        if len(images) != group.rank:
            raise InvalidHom(
                f"expected {group.rank} images, got {len(images)}"
            )
        self.group = group
        self.images = images
        self.name = name
        self._failures = None
        self._subgroup = None

    def key(self) -> bytes:
        return b"".join(t.key() for t in self.images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WHom)
            and self.group is other.group
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<WHom{tag} on {self.group.graph.code()}>"

    def failed_relations(self):
        if self._failures is None:
            self._failures = check_relations(self.group, self.images)
        return self._failures

    def is_valid(self) -> bool:
        return not self.failed_relations()

    def require_valid(self) -> "WHom":
        bad = self.failed_relations()
        if bad:
            raise InvalidHom(f"images fail defining relations {bad}")
        return self

    def image_subgroup(self):
        if self._subgroup is None:
            self._subgroup = self.group.subgroup(self.images)
        return self._subgroup

    def image_order(self) -> int:
        return self.image_subgroup().order()

    def is_surjective(self) -> bool:
        return self.is_valid() and self.image_order() == self.group.order()

    def is_ucep(self) -> bool:
        """True when the image together with the center is the whole group."""
        if not self.is_valid():
            return False
        h = self.image_order()
        w = self.group.order()
        if h == w:
            return True
        center = self.group.center()
        if len(center) == 2 and 2 * h == w:
            return not self.image_subgroup().contains(center[1])
        return False

    def is_proper(self) -> bool:
        return self.is_ucep() and self.image_order() < self.group.order()

    def is_ordinary(self) -> bool:
        """Every image squares to the identity."""
        group = self.group
        return all(group.is_identity(t * t) for t in self.images)

    def conjugate(self, w) -> "WHom":
        winv = w.inverse()
        return WHom(
            self.group, tuple(w * t * winv for t in self.images), name=self.name
        )

    def image_words(self, strategy: str = "min"):
        return tuple(
            self.group.reduced_word(t, strategy) for t in self.images
        )


def standard_hom(group) -> WHom:
    return WHom(
        group,
        tuple(group.gen(i) for i in range(1, group.rank + 1)),
        name="standard",
    )


def exists_proper_ucep(group):
    """Whether any proper ucep exists, with the witnessing sign character.

    One exists exactly when the center is {1, w0} and some homomorphism to
    {+1, -1} sends w0 to -1: its kernel H then splits W as H x Z(W), and
    projecting the standard map onto H is proper.  Both conditions are
    needed; an odd w0 alone is not enough when the center is trivial.
    """
    if len(group.center()) != 2:
        return False, None
    w0 = group.longest_element()
    for chi in group.sign_characters():
        if group.character_value(chi, w0) == -1:
            return True, chi
    return False, None


# ---------------------------------------------------------------------------
# built-in special homomorphisms


def _single_component(group):
    comps = group.graph.components()
    if len(comps) != 1:
        raise NoCatalogEntry("catalog entries exist per connected component")
    return comps[0]


def catalog(group) -> dict[str, WHom]:
    """The built-in special maps for the supported families, keyed by name.

    Every returned map has been checked against the defining relations at
    construction time.
    """
    comp = _single_component(group)
    if comp.family == "I":
        out = _catalog_i2(group, comp)
    elif comp.family == "B" and comp.rank >= 3:
        out = _catalog_b(group, comp)
    elif comp.family == "H" and comp.rank == 3:
        out = _catalog_h3(group, comp)
    elif comp.family == "E" and comp.rank == 7:
        out = _catalog_e7(group, comp)
    else:
        raise NoCatalogEntry(f"no built-in maps for {comp.tag}")
    for hom in out.values():
        hom.require_valid()
    return out


def _role_gen(group, comp):
    return lambda r: group.gen(comp.canonical[r - 1])


def _place(comp, role_images: dict):
    """Reorder role-indexed images into vertex order."""
    n = len(comp.canonical)
    images = [None] * n
    for role, t in role_images.items():
        images[comp.canonical[role - 1] - 1] = t
    return tuple(images)


def _catalog_i2(group, comp) -> dict[str, WHom]:
    p = comp.param
    g = _role_gen(group, comp)
    s1, s2 = g(1), g(2)
    out = {}
    if p % 4 == 2 and p >= 6:
        out["mu_prime"] = WHom(
            group, _place(comp, {1: s1, 2: s2 * s1 * s2}), name="mu_prime"
        )
    elif p % 4 == 0:
        out["nu1"] = WHom(
            group, _place(comp, {1: s1, 2: s2 * s1}), name="nu1"
        )
        out["nu2"] = WHom(
            group, _place(comp, {1: s1 * s2, 2: s2}), name="nu2"
        )
    if not out:
        raise NoCatalogEntry(f"no built-in maps for {comp.tag}")
    return out


def _catalog_b(group, comp) -> dict[str, WHom]:
    n = comp.rank
    g = _role_gen(group, comp)
    w0 = group.longest_element()
    # e[j] = s_j ... s_2 s_1 s_2 ... s_j, a reflection for every j
    e = {1: g(1)}
    for j in range(2, n):
        e[j] = g(j) * e[j - 1] * g(j)
    tail = {i: e[i - 1] * g(i) for i in range(2, n + 1)}
    out = {}
    if n % 2 == 1:
        roles = {1: w0 * g(1)}
        roles.update({i: g(i) for i in range(2, n + 1)})
        out["mu_prime"] = WHom(group, _place(comp, roles), name="mu_prime")
    heads = {
        "nu1": g(1),
        "nu2": w0,
        "nu3": w0 * g(1),
        "nu4": group.identity,
    }
    for name, head in heads.items():
        roles = {1: head}
        roles.update(tail)
        out[name] = WHom(group, _place(comp, roles), name=name)
    return out


def _catalog_h3(group, comp) -> dict[str, WHom]:
    g = _role_gen(group, comp)
    w0 = group.longest_element()

    def word(*letters):
        out = group.identity
        for r in letters:
            out = out * g(r)
        return out

    out = {
        "mu_prime": WHom(
            group,
            _place(comp, {1: g(1) * w0, 2: g(2) * w0, 3: g(3) * w0}),
            name="mu_prime",
        ),
        "mu_second": WHom(
            group,
            _place(
                comp,
                {
                    1: word(2, 1, 2, 1, 3, 2, 1, 2, 1, 3, 2, 1, 2, 3),
                    2: word(3, 2, 1, 2, 1, 3, 2, 1, 2, 3),
                    3: word(1, 3),
                },
            ),
            name="mu_second",
        ),
        "nu3": WHom(
            group,
            _place(
                comp,
                {
                    1: word(2, 1, 2, 1),
                    2: word(2, 1, 2, 1, 3, 2, 1, 2, 1, 3, 2, 1),
                    3: word(1, 2, 1, 2),
                },
            ),
            name="nu3",
        ),
        "nu4": WHom(
            group,
            _place(
                comp,
                {
                    1: word(3, 2, 1, 2),
                    2: word(2, 3, 2, 1),
                    3: word(2, 1, 2, 3),
                },
            ),
            name="nu4",
        ),
    }
    return out


def _catalog_e7(group, comp) -> dict[str, WHom]:
    g = _role_gen(group, comp)
    w0 = group.longest_element()
    roles = {i: w0 * g(i) for i in range(1, 8)}
    return {"mu_prime": WHom(group, _place(comp, roles), name="mu_prime")}


# ---------------------------------------------------------------------------
# automorphisms


class GroupAut:
    """Automorphism recorded by generator images, applied through reduced
    words of arguments."""

    def __init__(self, group, images, name: str | None = None):
        images = tuple(images)
        if len(images) != group.rank:
            raise InvalidAutomorphism(
                f"expected {group.rank} images, got {len(images)}"
            )
        bad = check_relations(group, images)
        if bad:
            raise InvalidAutomorphism(f"images fail defining relations {bad}")
        if group.subgroup_order(images) != group.order():
            raise InvalidAutomorphism("images do not generate the group")
        self.group = group
        self.images = images
        self.name = name

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<GroupAut{tag} on {self.group.graph.code()}>"

    def apply(self, w):
        out = self.group.identity
        for i in self.group.reduced_word(w):
            out = out * self.images[i - 1]
        return out

    def apply_hom(self, hom: WHom) -> WHom:
        return WHom(
            self.group, tuple(self.apply(t) for t in hom.images), name=hom.name
        )


def inner_aut(group, w) -> GroupAut:
    winv = w.inverse()
    return GroupAut(
        group,
        tuple(w * group.gen(i) * winv for i in range(1, group.rank + 1)),
        name="inner",
    )


def automorphism_generators(group) -> list[GroupAut]:
    """Non-inner generators used to coarsen conjugacy to equivalence.

    Three sources: the dihedral swap and reflection-rescaling maps, an
    explicit exceptional generator in the rank-3 pentagonal type, and the
    character twists s_i -> w0^(1-chi(s_i))/2 * s_i, which are
    automorphisms exactly when the longest element is central and takes
    the value +1 under chi.
    """
    comps = group.graph.components()
    if len(comps) != 1:
        return []
    comp = comps[0]
    g = _role_gen(group, comp)
    out = []
    if comp.family == "I":
        p = comp.param
        s1, s2 = g(1), g(2)
        out.append(GroupAut(group, _place(comp, {1: s2, 2: s1}), name="swap"))
        for k in range(1, (p - 1) // 2 + 1):
            if _gcd(2 * k + 1, p) != 1:
                continue
            t = s2
            for _ in range(k):
                t = s2 * s1 * t * s1 * s2
            out.append(
                GroupAut(group, _place(comp, {1: s1, 2: t}), name=f"alpha{k}")
            )
    if comp.family == "H" and comp.rank == 3:
        a1 = group.identity
        for r in (2, 1, 3, 2, 3, 1, 2, 1, 3, 2, 3, 1, 2):
            a1 = a1 * g(r)
        out.append(
            GroupAut(
                group, _place(comp, {1: a1, 2: g(2), 3: g(3)}), name="alpha"
            )
        )
    out.extend(_character_twists(group))
    return out


def _character_twists(group) -> list[GroupAut]:
    xi = group.xi()
    if any(v != k for k, v in xi.items()):
        return []
    w0 = group.longest_element()
    out = []
    for idx, chi in enumerate(group.sign_characters()):
        if idx == 0 or group.character_value(chi, w0) != 1:
            continue
        images = tuple(
            group.gen(i) if chi[i] == 1 else w0 * group.gen(i)
            for i in range(1, group.rank + 1)
        )
        out.append(GroupAut(group, images, name=f"twist{idx}"))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# classification


def valid_tuples(group, elements=None, firsts=None):
    """All generator-image tuples satisfying the defining relations.

    The search fills vertices in graph order and prunes with every relation
    between the new coordinate and the ones already placed.  `firsts`
    restricts the candidates for vertex 1; the default is every element.
    """
    if elements is None:
        elements = group.enumerate_all()
    if firsts is None:
        firsts = elements
    n = group.rank
    graph = group.graph
    labels = [
        [(j, graph.m(j + 1, i + 1)) for j in range(i)] for i in range(n)
    ]
    out = []
    stack = [(0, ())]
    while stack:
        depth, chosen = stack.pop()
        if depth == n:
            out.append(chosen)
            continue
        pool = firsts if depth == 0 else elements
        for cand in pool:
            ok = True
            for j, m in labels[depth]:
                if not _braid_ok(group, chosen[j], cand, m):
                    ok = False
                    break
            if ok:
                stack.append((depth + 1, chosen + (cand,)))
    return out


def _braid_ok(group, a, b, m: int) -> bool:
    x = group.identity
    y = group.identity
    for k in range(m):
        x = x * (a if k % 2 == 0 else b)
        y = y * (b if k % 2 == 0 else a)
    return x == y


def canonical_form(hom: WHom, pairs=None):
    """Lexicographically least conjugate of the image tuple, with the orbit
    size under simultaneous conjugation."""
    group = hom.group
    if pairs is None:
        pairs = conjugation_pairs(group)
    best = None
    best_key = None
    seen = set()
    for w, winv in pairs:
        cand = tuple(w * t * winv for t in hom.images)
        key = b"".join(t.key() for t in cand)
        seen.add(key)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return WHom(group, best, name=hom.name), best_key, len(seen)


def conjugation_pairs(group):
    return [(w, w.inverse()) for w in group.enumerate_all()]


@dataclass
class HomClassRow:
    name: str | None
    hom: WHom
    words: tuple
    proper: bool
    ordinary: bool
    image_order: int
    size: int
    merged_names: tuple = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "images": [list(w) for w in self.words],
            "proper": self.proper,
            "ordinary": self.ordinary,
            "image_order": self.image_order,
            "size": self.size,
        }


@dataclass
class HomClassReport:
    graph: str
    mode: str
    rows: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "mode": self.mode,
            "classes": [row.to_dict() for row in self.rows],
        }

    def proper_rows(self) -> list:
        return [row for row in self.rows if row.proper]


def classify_uceps(
    group,
    mode: str = "conjugacy",
    bound: int = 10_000,
    aut_gens=None,
) -> HomClassReport:
    """Every ucep up to simultaneous conjugation, or up to the coarser
    relation that also allows composing with automorphisms.

    Exhaustive in the group order, so refuses to run past `bound`.
    """
    if mode not in ("conjugacy", "equivalence"):
        raise ValueError(f"unknown mode {mode!r}")
    order = group.order()
    if order > bound:
        raise GroupTooLarge(
            f"order {order} exceeds bound {bound}; raise bound to force"
        )
    elements = group.enumerate_all()
    pairs = [(w, w.inverse()) for w in elements]
    reps = [c.rep for c in conjugacy_classes(group)]

    found = {}
    for images in valid_tuples(group, elements, firsts=reps):
        hom = WHom(group, images)
        if not hom.is_ucep():
            continue
        rep, key, size = canonical_form(hom, pairs)
        if key not in found:
            found[key] = (rep, size)

    names = _catalog_keys(group, pairs)
    rows = []
    for key in sorted(found):
        rep, size = found[key]
        rep.name = names.get(key)
        rows.append(_make_row(rep, key, size))

    report = HomClassReport(graph=group.graph.code(), mode=mode, rows=rows)
    if mode == "equivalence":
        auts = automorphism_generators(group) if aut_gens is None else aut_gens
        report.rows = _merge_rows(group, rows, auts, pairs)
    return report


def _catalog_keys(group, pairs) -> dict[bytes, str]:
    try:
        built_in = catalog(group)
    except NoCatalogEntry:
        built_in = {}
    out = {}
    std = standard_hom(group)
    _, key, _ = canonical_form(std, pairs)
    out[key] = "standard"
    for name, hom in built_in.items():
        _, key, _ = canonical_form(hom, pairs)
        out.setdefault(key, name)
    return out


def _make_row(rep: WHom, key: bytes, size: int, merged=()) -> HomClassRow:
    return HomClassRow(
        name=rep.name,
        hom=rep,
        words=rep.image_words(),
        proper=rep.is_proper(),
        ordinary=rep.is_ordinary(),
        image_order=rep.image_order(),
        size=size,
        merged_names=tuple(merged),
    )


def _merge_rows(group, rows, auts, pairs):
    """Union conjugacy classes along the automorphism action.  Each
    generator is invertible, so single applications connect every orbit."""
    parent = {}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    keys = []
    by_key = {}
    for row in rows:
        _, key, _ = canonical_form(row.hom, pairs)
        parent.setdefault(key, key)
        keys.append(key)
        by_key[key] = row
    for key, row in zip(keys, rows):
        for aut in auts:
            _, image_key, _ = canonical_form(aut.apply_hom(row.hom), pairs)
            parent.setdefault(image_key, image_key)
            union(key, image_key)

    clusters = {}
    for key in keys:
        clusters.setdefault(find(key), []).append(key)
    merged = []
    for root_keys in clusters.values():
        members = [by_key[k] for k in sorted(root_keys)]
        lead = members[0]
        names = [m.name for m in members if m.name]
        merged.append(
            HomClassRow(
                name=names[0] if names else None,
                hom=lead.hom,
                words=lead.words,
                proper=lead.proper,
                ordinary=lead.ordinary,
                image_order=lead.image_order,
                size=sum(m.size for m in members),
                merged_names=tuple(names),
            )
        )
    merged.sort(key=lambda row: row.hom.key())
    return merged


def merge_by_automorphisms(group, homs, auts):
    """Group the given maps into equivalence classes under conjugation and
    the automorphism action; returns lists of indices into `homs`."""
    pairs = conjugation_pairs(group)
    parent = {}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    keys = []
    owners = {}
    for idx, hom in enumerate(homs):
        _, key, _ = canonical_form(hom, pairs)
        parent.setdefault(key, key)
        owners.setdefault(key, []).append(idx)
        keys.append(key)
        for aut in auts:
            _, image_key, _ = canonical_form(aut.apply_hom(hom), pairs)
            parent.setdefault(image_key, image_key)
            union(key, image_key)

    clusters = {}
    for key in set(keys):
        clusters.setdefault(find(key), set()).update(owners[key])
    return sorted(sorted(group_) for group_ in clusters.values())


def preserves_coloured(group, words) -> bool:
    """Whether the endomorphism sending each generator to the given word
    keeps the kernel of the projection to the Coxeter group's reflection
    colouring inside itself: every image must square to the identity."""
    images = [mu_eval(w, group) for w in words]
    bad = check_relations(group, images)
    if bad:
        raise RelationViolation(f"images fail defining relations {bad}")
    return all(group.is_identity(t * t) for t in images)
