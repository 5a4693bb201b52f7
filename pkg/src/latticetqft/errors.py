"""Exception types raised across the package."""


class LatticeTqftError(Exception):
    """Base class for all errors raised by this package."""


# -- triangulations ----------------------------------------------------------

class NotAnInvolution(LatticeTqftError):
    """A side is glued twice, to itself, or inconsistently."""


class IncompleteGluing(LatticeTqftError):
    """Some side of the triangulation was left unglued."""


class InconsistentFlip(LatticeTqftError):
    """The two listings of a gluing pair carry different flip bits."""


class IndexOutOfRange(LatticeTqftError, IndexError):
    """A triangle, side, or corner reference is out of range."""


class SelfGluedEdge(LatticeTqftError):
    """A 2-2 move was requested on an edge whose sides lie on one triangle."""


class BadValence(LatticeTqftError):
    """A 3-1 move was requested at a vertex that is not a valence-3 vertex
    with three distinct triangles."""


class InvalidCrosscaps(LatticeTqftError):
    """A non-orientable surface needs at least one crosscap."""


class ParseError(LatticeTqftError):
    """Malformed text input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- algebras ----------------------------------------------------------------

class DimensionMismatch(LatticeTqftError):
    """A coordinate vector does not match the algebra dimension."""


class NotSemisimple(LatticeTqftError):
    """The trace bilinear form is degenerate, so no copairing exists."""


class UnsupportedStar(LatticeTqftError):
    """The requested involution is not available at this size."""


class StarMismatch(LatticeTqftError):
    """Combining an algebra with an involution and one without."""


class InvalidAlgebra(LatticeTqftError):
    """Structure-constant data violates the algebra axioms."""


# -- groups ------------------------------------------------------------------

class OrderCapExceeded(LatticeTqftError):
    """Generated group grew past the configured order cap."""


class InvalidPermutation(LatticeTqftError):
    """A generator is not a bijection on its declared points."""


class UnknownGroup(LatticeTqftError):
    """Unrecognized group catalog name."""


class InvalidGroupTable(LatticeTqftError):
    """A Cayley table fails the group axioms."""


class PrimeSearchFailed(LatticeTqftError):
    """No admissible prime below the configured bound (configuration error)."""


class WorkCapExceeded(LatticeTqftError):
    """An enumeration would exceed the configured work cap."""


# -- tensor networks ---------------------------------------------------------

class StarRequired(LatticeTqftError):
    """A gluing needs the star twist but the algebra has no involution."""


class PlanMismatch(LatticeTqftError):
    """A contraction plan does not match the network it is applied to."""


class UnrecognizedTopology(LatticeTqftError):
    """Euler characteristic / orientability pair matches no closed surface."""


class BadSpec(LatticeTqftError):
    """Malformed algebra, group, or surface spec string."""
