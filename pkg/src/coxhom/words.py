"""Words in the Artin generators and their images in the Coxeter group.

Elements of the Artin group are handled purely as words: every decision in
this package factors through the Coxeter image or the affine-permutation
representation, so no normal form for the Artin group itself is needed.
Claims that two words name the same Artin element are certified by checking
equality of both images, which suffices for everything in scope here.
"""

from __future__ import annotations

from .errors import DisconnectedGraph, InfiniteLabel, InvalidWord
from .graphs import CoxeterGraph


class ArtinWord:
    """Immutable word in generators 1..n and their inverses.

    Letters are signed indices: 3 means the third generator, -3 its inverse.
    """

    __slots__ = ("graph", "letters")

    def __init__(self, graph: CoxeterGraph, letters=()):
        letters = tuple(int(x) for x in letters)
        for x in letters:
            if x == 0 or abs(x) > graph.n:
                raise InvalidWord(f"letter {x} out of range 1..{graph.n}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("ArtinWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        if other.graph is not self.graph and other.graph != self.graph:
            raise InvalidWord("cannot concatenate words over different graphs")
        return ArtinWord(self.graph, self.letters + other.letters)

    def inverse(self) -> "ArtinWord":
        return ArtinWord(self.graph, tuple(-x for x in reversed(self.letters)))

    def free_reduce(self) -> "ArtinWord":
        out: list[int] = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return ArtinWord(self.graph, tuple(out))

    def power(self, k: int) -> "ArtinWord":
        if k < 0:
            return self.inverse().power(-k)
        return ArtinWord(self.graph, self.letters * k)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ArtinWord)
            and self.letters == other.letters
            and self.graph == other.graph
        )

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"ArtinWord({format_word(self.letters)!r})"


def parse_word(text: str, graph: CoxeterGraph) -> ArtinWord:
    """Parse "1 2 -1" into a word; blank input is the empty word."""
    parts = text.split()
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InvalidWord(f"cannot parse word {text!r}") from exc
    return ArtinWord(graph, letters)


def format_word(letters) -> str:
    return " ".join(str(x) for x in letters)


def omega(a: int, b: int, m: int):
    """Alternating word a b a b ... of length m: (ab)^{m/2}, odd m ends in a."""
    if m is None or m < 2:
        raise InfiniteLabel(f"need a finite bond of at least 2, got {m}")
    out = []
    for k in range(m):
        out.append(a if k % 2 == 0 else b)
    return tuple(out)


def defining_relations(graph: CoxeterGraph):
    """All n(n-1)/2 relation pairs (left, right, (i, j, m)), including
    the commuting relations for unlabeled pairs."""
    out = []
    for i in range(1, graph.n + 1):
        for j in range(i + 1, graph.n + 1):
            m = graph.m(i, j)
            out.append((omega(i, j, m), omega(j, i, m), (i, j, m)))
    return out


def mu_eval(word, group):
    """Image of the word in the Coxeter group (generators are involutions,
    so the sign of each letter is immaterial)."""
    letters = word.letters if isinstance(word, ArtinWord) else word
    out = group.identity
    for x in letters:
        out = out * group.gen(abs(x))
    return out


def tits_section(group, w, strategy: str = "min") -> ArtinWord:
    """Positive lift of w: the chosen reduced word, read as an Artin word.

    As an Artin-group element the lift does not depend on the strategy; the
    words differ, which is exactly what the lift-independence tests exercise.
    """
    return ArtinWord(group.graph, group.reduced_word(w, strategy))


def fundamental_and_central(group) -> tuple[ArtinWord, ArtinWord]:
    """The lift of the longest element, and the generator of the center of
    the Artin group: the lift itself when conjugation by the longest element
    fixes every generator, its square otherwise."""
    xi = group.xi()  # raises DisconnectedGraph on product groups
    delta = tits_section(group, group.longest_element())
    if all(v == k for k, v in xi.items()):
        return delta, delta
    return delta, delta * delta


def check_relations(group, images, graph: CoxeterGraph | None = None):
    """Indices (i, j, m) of defining relations the images fail; empty if valid."""
    graph = graph if graph is not None else group.graph
    bad = []
    for left, right, key in defining_relations(graph):
        lhs = group.identity
        for x in left:
            lhs = lhs * images[x - 1]
        rhs = group.identity
        for x in right:
            rhs = rhs * images[x - 1]
        if lhs != rhs:
            bad.append(key)
    return bad
