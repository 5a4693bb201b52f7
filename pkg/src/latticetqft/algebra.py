"""Finite-dimensional algebras over the rationals by structure constants.

e_i e_j = sum_k c[i][j][k] e_k with exact Fraction entries.  The trace form
Tr(x) is the trace of left multiplication by x; T2(x,y) = Tr(xy) is the Gram
form whose inverse is the copairing.  An optional involution is stored as a
matrix on basis vectors (row i = coordinates of e_i*).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    BadSpec,
    DimensionMismatch,
    InvalidAlgebra,
    NotSemisimple,
    StarMismatch,
    UnsupportedStar,
)

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac_rows(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def invert_rational_matrix(mat: Sequence[Sequence[Fraction]]) -> Optional[list[list[Fraction]]]:
    """Exact Gauss-Jordan inverse; None if singular."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [_ONE if i == j else _ZERO for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class BasedAlgebra:
    """An algebra presented by dense rational structure constants."""

    dim: int
    structure_constants: tuple[Matrix, ...]   # c[i][j][k]
    unit: Vector
    star: Optional[Matrix] = None

    # -- sparse views ------------------------------------------------------

    @cached_property
    def mult_rows(self) -> tuple[tuple[dict[int, Fraction], ...], ...]:
        """mult_rows[i][j] maps k -> c[i][j][k], zeros omitted."""
        return tuple(
            tuple({k: v for k, v in enumerate(row) if v} for row in plane)
            for plane in self.structure_constants)

    @cached_property
    def trace_vector(self) -> Vector:
        """Tr(m_{e_i}) per basis vector."""
        c = self.structure_constants
        return tuple(sum((c[i][j][j] for j in range(self.dim)), _ZERO)
                     for i in range(self.dim))

    @cached_property
    def gram(self) -> Matrix:
        """T2(e_i, e_j) = Tr(m_{e_i e_j})."""
        tr = self.trace_vector
        return tuple(
            tuple(sum((v * tr[k] for k, v in self.mult_rows[i][j].items()), _ZERO)
                  for j in range(self.dim))
            for i in range(self.dim))

    @cached_property
    def copairing(self) -> Matrix:
        """Inverse of the Gram matrix: p = sum p[a][b] e_a (x) e_b."""
        inv = invert_rational_matrix(self.gram)
        if inv is None:
            raise NotSemisimple("trace form is degenerate")
        return tuple(tuple(row) for row in inv)

    def basis_vector(self, i: int) -> Vector:
        return tuple(_ONE if j == i else _ZERO for j in range(self.dim))

    def _check_vec(self, x) -> Vector:
        if len(x) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {len(x)}")
        return tuple(Fraction(v) for v in x)

    # -- operations ---------------------------------------------------------

    def multiply(self, x, y) -> Vector:
        x, y = self._check_vec(x), self._check_vec(y)
        out = [_ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, v in self.mult_rows[i][j].items():
                    out[k] += w * v
        return tuple(out)

    def trace_form(self, x) -> Fraction:
        x = self._check_vec(x)
        return sum((xi * t for xi, t in zip(x, self.trace_vector) if xi), _ZERO)

    def t3(self, x, y, z) -> Fraction:
        """Cyclic triple form Tr(m_{xyz})."""
        return self.trace_form(self.multiply(self.multiply(x, y), z))

    def star_vector(self, x) -> Vector:
        if self.star is None:
            raise UnsupportedStar("algebra has no involution")
        x = self._check_vec(x)
        out = [_ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for j, s in enumerate(self.star[i]):
                    if s:
                        out[j] += xi * s
        return tuple(out)

    # -- axiom checks ---------------------------------------------------------

    def check_axioms(self) -> None:
        """Exhaustive associativity / unit checks; raises InvalidAlgebra."""
        D = self.dim
        rows = self.mult_rows
        for i in range(D):
            ei = self.basis_vector(i)
            if self.multiply(self.unit, ei) != ei or self.multiply(ei, self.unit) != ei:
                raise InvalidAlgebra(f"unit law fails on basis vector {i}")
        c = self.structure_constants
        for i in range(D):
            for j in range(D):
                for k in range(D):
                    lhs = [_ZERO] * D
                    for l, v in rows[i][j].items():
                        for m, w in rows[l][k].items():
                            lhs[m] += v * w
                    rhs = [_ZERO] * D
                    for l, v in rows[j][k].items():
                        for m, w in rows[i][l].items():
                            rhs[m] += v * w
                    if lhs != rhs:
                        raise InvalidAlgebra(f"associativity fails at triple ({i},{j},{k})")

    def check_star_axioms(self) -> None:
        """star^2 = id, (ab)* = b*a*, Tr(a*) = Tr(a), and copairing symmetry."""
        if self.star is None:
            raise UnsupportedStar("algebra has no involution")
        D = self.dim
        for i in range(D):
            ei = self.basis_vector(i)
            si = self.star_vector(ei)
            if self.star_vector(si) != ei:
                raise InvalidAlgebra(f"star is not an involution on basis vector {i}")
            if self.trace_form(si) != self.trace_form(ei):
                raise InvalidAlgebra(f"star does not preserve the trace at {i}")
        for i in range(D):
            for j in range(D):
                lhs = self.star_vector(self.multiply(self.basis_vector(i), self.basis_vector(j)))
                rhs = self.multiply(self.star_vector(self.basis_vector(j)),
                                    self.star_vector(self.basis_vector(i)))
                if lhs != rhs:
                    raise InvalidAlgebra(f"(ab)* != b*a* at pair ({i},{j})")
        # (star (x) id) p = (id (x) star) p, i.e. S^T P = P S
        p, s = self.copairing, self.star
        for a in range(D):
            for b in range(D):
                lhs = sum((s[x][a] * p[x][b] for x in range(D)), _ZERO)
                rhs = sum((p[a][x] * s[x][b] for x in range(D)), _ZERO)
                if lhs != rhs:
                    raise InvalidAlgebra("copairing is not star-symmetric")


# -- constructors --------------------------------------------------------------

def group_algebra(group) -> BasedAlgebra:
    """Rational group algebra with involution g* = g^{-1}."""
    n = group.order
    cay = group.cayley
    c = tuple(
        tuple(tuple(_ONE if cay[i][j] == k else _ZERO for k in range(n)) for j in range(n))
        for i in range(n))
    unit = tuple(_ONE if i == group.identity else _ZERO for i in range(n))
    star = tuple(
        tuple(_ONE if group.inverse[i] == j else _ZERO for j in range(n))
        for i in range(n))
    return BasedAlgebra(n, c, unit, star)


def matrix_algebra(n: int, star_kind: str = "none") -> BasedAlgebra:
    """Full matrix algebra on the basis of matrix units e_{ij}.

    star_kind "transpose" is the standard involution; "anti" (n = 2 only) is
    transpose conjugated by the antisymmetric form: with index signs
    eps(0) = +1, eps(1) = -1, e_{ab}* = eps(a) eps(b) e_{1-b, 1-a}.  Larger
    antisymmetric blocks are tensor products with a transpose factor.
    """
    if n < 1:
        raise BadSpec("matrix algebra needs n >= 1")
    D = n * n

    def flat(i, j):
        return i * n + j

    c = [[[_ZERO] * D for _ in range(D)] for _ in range(D)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[flat(i, j)][flat(j, k)][flat(i, k)] = _ONE
    unit = [_ZERO] * D
    for i in range(n):
        unit[flat(i, i)] = _ONE

    star = None
    if star_kind == "transpose":
        star = [[_ZERO] * D for _ in range(D)]
        for i in range(n):
            for j in range(n):
                star[flat(i, j)][flat(j, i)] = _ONE
    elif star_kind == "anti":
        if n != 2:
            raise UnsupportedStar("antisymmetric star is built in only at n = 2")
        star = [[_ZERO] * D for _ in range(D)]
        eps = (1, -1)
        for a in range(2):
            for b in range(2):
                star[flat(a, b)][flat(1 - b, 1 - a)] = Fraction(eps[a] * eps[b])
    elif star_kind != "none":
        raise BadSpec(f"unknown star kind {star_kind!r}")

    return BasedAlgebra(
        D,
        tuple(tuple(tuple(row) for row in plane) for plane in c),
        tuple(unit),
        None if star is None else tuple(tuple(row) for row in star))


def swap_algebra() -> BasedAlgebra:
    """k + k with the involution exchanging the two idempotents."""
    c = (((_ONE, _ZERO), (_ZERO, _ZERO)), ((_ZERO, _ZERO), (_ZERO, _ONE)))
    return BasedAlgebra(2, c, (_ONE, _ONE), ((_ZERO, _ONE), (_ONE, _ZERO)))


def _check_star_presence(a: BasedAlgebra, b: BasedAlgebra) -> bool:
    if (a.star is None) != (b.star is None):
        raise StarMismatch("one operand has an involution, the other does not")
    return a.star is not None


def direct_sum(a: BasedAlgebra, b: BasedAlgebra) -> BasedAlgebra:
    has_star = _check_star_presence(a, b)
    D = a.dim + b.dim
    c = [[[_ZERO] * D for _ in range(D)] for _ in range(D)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k, v in a.mult_rows[i][j].items():
                c[i][j][k] = v
    for i in range(b.dim):
        for j in range(b.dim):
            for k, v in b.mult_rows[i][j].items():
                c[a.dim + i][a.dim + j][a.dim + k] = v
    unit = tuple(a.unit) + tuple(b.unit)
    star = None
    if has_star:
        star = [[_ZERO] * D for _ in range(D)]
        for i in range(a.dim):
            for j in range(a.dim):
                star[i][j] = a.star[i][j]
        for i in range(b.dim):
            for j in range(b.dim):
                star[a.dim + i][a.dim + j] = b.star[i][j]
    return BasedAlgebra(
        D,
        tuple(tuple(tuple(row) for row in plane) for plane in c),
        unit,
        None if star is None else tuple(tuple(row) for row in star))


def tensor_product(a: BasedAlgebra, b: BasedAlgebra) -> BasedAlgebra:
    has_star = _check_star_presence(a, b)
    D = a.dim * b.dim

    def flat(i, j):
        return i * b.dim + j

    c = [[[_ZERO] * D for _ in range(D)] for _ in range(D)]
    for i1 in range(a.dim):
        for i2 in range(a.dim):
            row_a = a.mult_rows[i1][i2]
            for j1 in range(b.dim):
                for j2 in range(b.dim):
                    row_b = b.mult_rows[j1][j2]
                    tgt = c[flat(i1, j1)][flat(i2, j2)]
                    for k1, v1 in row_a.items():
                        for k2, v2 in row_b.items():
                            tgt[flat(k1, k2)] = v1 * v2
    unit = [_ZERO] * D
    for i, u in enumerate(a.unit):
        for j, v in enumerate(b.unit):
            unit[flat(i, j)] = u * v
    star = None
    if has_star:
        star = [[_ZERO] * D for _ in range(D)]
        for i1 in range(a.dim):
            for j1 in range(a.dim):
                sa = a.star[i1][j1]
                if not sa:
                    continue
                for i2 in range(b.dim):
                    for j2 in range(b.dim):
                        sb = b.star[i2][j2]
                        if sb:
                            star[flat(i1, i2)][flat(j1, j2)] = sa * sb
    return BasedAlgebra(
        D,
        tuple(tuple(tuple(row) for row in plane) for plane in c),
        tuple(unit),
        None if star is None else tuple(tuple(row) for row in star))


# -- classified *-blocks --------------------------------------------------------

PLAIN = "plain"   # M_n with transpose star; contributes n^chi
SWAP = "swap"     # (M_n + M_n) with the swap star; contributes n^chi * #orientations
ANTI = "anti"     # M_n with the antisymmetric star (n even); contributes (n/2)^chi (-2)^chi


@dataclass(frozen=True)
class Block:
    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (PLAIN, SWAP, ANTI):
            raise BadSpec(f"unknown block kind {self.kind!r}")
        if self.size < 1:
            raise BadSpec("block size must be >= 1")
        if self.kind == ANTI and self.size % 2:
            raise BadSpec("antisymmetric blocks need even size")

    @property
    def dimension(self) -> int:
        n = self.size
        return 2 * n * n if self.kind == SWAP else n * n


@dataclass(frozen=True)
class StructuredAlgebra:
    """Formal direct sum of classified *-blocks."""

    blocks: tuple[Block, ...]

    @property
    def dimension(self) -> int:
        return sum(b.dimension for b in self.blocks)


# -- spec strings ----------------------------------------------------------------

def split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise BadSpec(f"unbalanced parentheses in {text!r}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise BadSpec(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return parts


def parse_algebra_spec(spec: str) -> BasedAlgebra:
    """Grammar: group:<g> | matrix:<n>[:transpose|:anti] | swap
    | sum(<a>,<b>) | tensor(<a>,<b>)."""
    from . import grouptheory

    spec = spec.strip()
    if spec == "swap":
        return swap_algebra()
    if spec.startswith("group:"):
        return group_algebra(grouptheory.parse_group_spec(spec[len("group:"):]))
    if spec.startswith("matrix:"):
        fields = spec.split(":")
        if len(fields) not in (2, 3):
            raise BadSpec(f"bad matrix spec {spec!r}")
        try:
            n = int(fields[1])
        except ValueError:
            raise BadSpec(f"bad matrix size in {spec!r}") from None
        kind = fields[2] if len(fields) == 3 else "none"
        if kind not in ("none", "transpose", "anti"):
            raise BadSpec(f"bad star kind in {spec!r}")
        return matrix_algebra(n, kind)
    for head, combine in (("sum(", direct_sum), ("tensor(", tensor_product)):
        if spec.startswith(head) and spec.endswith(")"):
            inner = split_top_level(spec[len(head):-1])
            if len(inner) != 2:
                raise BadSpec(f"{head[:-1]} takes exactly two operands: {spec!r}")
            return combine(parse_algebra_spec(inner[0]), parse_algebra_spec(inner[1]))
    raise BadSpec(f"unrecognized algebra spec {spec!r}")
