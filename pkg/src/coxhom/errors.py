"""Exception types shared across the package."""


class CoxhomError(Exception):
    pass


class GraphParseError(CoxhomError):
    """Malformed graph code or edge list."""


class UnsupportedLabel(CoxhomError):
    """Edge label outside the supported range (e.g. infinite bonds)."""


class NonSphericalGraph(CoxhomError):
    """The graph is not a disjoint union of finite-type diagrams."""


class DisconnectedGraph(CoxhomError):
    """Operation requires a connected graph."""


class GroupTooLarge(CoxhomError):
    """Brute-force search refused; use the dedicated pipelines."""


class RelationViolation(CoxhomError):
    """Proposed generator images do not satisfy the defining relations."""


class InvalidAutomorphism(CoxhomError):
    """Generator images do not define an automorphism."""


class InvalidWord(CoxhomError):
    """Word references a generator outside the graph."""


class InfiniteLabel(CoxhomError):
    """Alternating-word builders need a finite bond."""


class InvalidHom(CoxhomError):
    """The map is not a valid homomorphism for the requested operation."""


class NoCatalogEntry(CoxhomError):
    """No named homomorphisms are on record for this type."""


class Table1Missing(CoxhomError):
    """Second-stage statistics need the first-stage rows."""
