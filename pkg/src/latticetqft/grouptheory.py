"""Finite groups by Cayley table: construction, conjugacy classes, Dixon
modular character data (irreducible dimensions and Frobenius-Schur
indicators), surface-group homomorphism counts, and consistent-labeling
counts on triangulations.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from . import kernels
from .algebra import split_top_level
from .errors import (
    BadSpec,
    InvalidGroupTable,
    InvalidPermutation,
    OrderCapExceeded,
    ParseError,
    PrimeSearchFailed,
    UnknownGroup,
    WorkCapExceeded,
)

DEFAULT_ORDER_CAP = 10_000
DEFAULT_WORK_CAP = 10 ** 8


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    element_names: tuple[str, ...]

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    @cached_property
    def flat_cayley(self) -> array:
        return array("i", (x for row in self.cayley for x in row))

    @cached_property
    def flat_inverse(self) -> array:
        return array("i", self.inverse)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            o = self.element_order(a)
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes as sorted index tuples; identity class first, then by
        smallest member."""
        seen = [False] * self.order
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            orbit = {self.cayley[self.cayley[g][x]][self.inverse[g]]
                     for g in range(self.order)}
            for y in orbit:
                seen[y] = True
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda cl: (self.identity not in cl, cl[0]))
        return tuple(classes)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.order
        for ci, cl in enumerate(self.conjugacy_classes):
            for x in cl:
                out[x] = ci
        return tuple(out)


def check_group_axioms(cayley: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Return (identity, inverse map); raises InvalidGroupTable.

    Associativity is checked exhaustively up to order 64 and on a fixed
    deterministic sample above that.
    """
    n = len(cayley)
    if n == 0 or any(len(row) != n for row in cayley):
        raise InvalidGroupTable("table must be square and non-empty")
    for row in cayley:
        for x in row:
            if not 0 <= x < n:
                raise InvalidGroupTable(f"entry {x} out of range")
    identity = None
    for e in range(n):
        if all(cayley[e][x] == x and cayley[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise InvalidGroupTable("no identity element")
    inverse = [-1] * n
    for a in range(n):
        for b in range(n):
            if cayley[a][b] == identity and cayley[b][a] == identity:
                inverse[a] = b
                break
        if inverse[a] < 0:
            raise InvalidGroupTable(f"element {a} has no inverse")
    idx = range(n) if n <= 64 else range(0, n, max(1, n // 64))
    for a in idx:
        for b in idx:
            for c in idx:
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
                    raise InvalidGroupTable(f"associativity fails at ({a},{b},{c})")
    return identity, tuple(inverse)


def from_cayley_table(cayley: Sequence[Sequence[int]],
                      names: Optional[Sequence[str]] = None) -> FiniteGroup:
    identity, inverse = check_group_axioms(cayley)
    n = len(cayley)
    if names is None:
        names = [f"g{i}" for i in range(n)]
    return FiniteGroup(n, tuple(tuple(row) for row in cayley), identity,
                       inverse, tuple(names))


# -- permutation groups ---------------------------------------------------------

def _perm_name(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def group_from_permutations(degree: int, generators: Iterable[Sequence[int]],
                            max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Closure of the generators under composition, breadth first.

    Element 0 is the identity; new elements are discovered by right
    multiplication with the generators in the given order, so the element
    numbering is deterministic.
    """
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidPermutation(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= max_order:
                    raise OrderCapExceeded(f"group order exceeds cap {max_order}")
                index[y] = len(elements)
                elements.append(y)
    n = len(elements)
    cayley = tuple(
        tuple(index[tuple(a[b[i]] for i in range(degree))] for b in elements)
        for a in elements)
    identity, inverse = check_group_axioms(cayley)
    return FiniteGroup(n, cayley, identity, inverse,
                       tuple(_perm_name(p) for p in elements))


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n = a.order * b.order

    def flat(i, j):
        return i * b.order + j

    cayley = tuple(
        tuple(flat(a.cayley[i1][i2], b.cayley[j1][j2])
              for i2 in range(a.order) for j2 in range(b.order))
        for i1 in range(a.order) for j1 in range(b.order))
    names = tuple(f"({a.element_names[i]},{b.element_names[j]})"
                  for i in range(a.order) for j in range(b.order))
    identity = flat(a.identity, b.identity)
    inverse = tuple(flat(a.inverse[i], b.inverse[j])
                    for i in range(a.order) for j in range(b.order))
    return FiniteGroup(n, cayley, identity, inverse, names)


# -- catalog ----------------------------------------------------------------------

_QUAT_UNITS = ("1", "i", "j", "k")
_QUAT_MULT = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def _quaternion_group() -> FiniteGroup:
    # elements: (+1,-1,+i,-i,+j,-j,+k,-k) as (sign, unit) pairs
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    cayley = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s3, u3 = _QUAT_MULT[u1][u2]
            row.append(index[(s1 * s2 * s3, u3)])
        cayley.append(tuple(row))
    names = tuple(("+" if s > 0 else "-") + _QUAT_UNITS[u] for s, u in elems)
    identity, inverse = check_group_axioms(cayley)
    return FiniteGroup(8, tuple(cayley), identity, inverse, names)


def _cyclic(n: int, max_order: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroup(f"C{n}")
    if n == 1:
        return group_from_permutations(1, [], max_order)
    rot = tuple((i + 1) % n for i in range(n))
    return group_from_permutations(n, [rot], max_order)


def _dihedral(n: int, max_order: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroup(f"D{n}")
    if n == 1:
        return group_from_permutations(2, [(1, 0)], max_order)
    if n == 2:
        return group_from_permutations(4, [(1, 0, 2, 3), (0, 1, 3, 2)], max_order)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return group_from_permutations(n, [rot, ref], max_order)


def _symmetric(n: int, max_order: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroup(f"S{n}")
    if n == 1:
        return group_from_permutations(1, [], max_order)
    swap = (1, 0) + tuple(range(2, n))
    rot = tuple((i + 1) % n for i in range(n))
    return group_from_permutations(n, [swap, rot] if n > 2 else [swap], max_order)


def _alternating(n: int, max_order: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroup(f"A{n}")
    if n <= 2:
        return group_from_permutations(max(n, 1), [], max_order)
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(tuple(p))
    return group_from_permutations(n, gens, max_order)


def _parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    perm = list(range(degree))
    body = text.strip()
    if not body.startswith("(") or not body.endswith(")"):
        raise BadSpec(f"bad cycle notation {text!r}")
    for cyc in body[1:-1].split(")("):
        pts = []
        for tok in cyc.replace(",", " ").split():
            try:
                pts.append(int(tok))
            except ValueError:
                raise BadSpec(f"bad point {tok!r} in {text!r}") from None
        for p in pts:
            if not 0 <= p < degree:
                raise InvalidPermutation(f"point {p} out of range 0..{degree - 1}")
        if len(set(pts)) != len(pts):
            raise InvalidPermutation(f"repeated point in cycle {cyc!r}")
        for i, p in enumerate(pts):
            perm[p] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def load_cayley_file(path: str) -> FiniteGroup:
    """Read the grp-v1 table format: header line, then order rows of indices."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    rows = []
    order = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if order is None:
            if len(tokens) != 2 or tokens[0] != "grp-v1":
                raise ParseError(lineno, "expected header 'grp-v1 <order>'")
            order = int(tokens[1])
            continue
        if len(tokens) != order:
            raise ParseError(lineno, f"expected {order} entries, got {len(tokens)}")
        try:
            rows.append([int(tok) for tok in tokens])
        except ValueError:
            raise ParseError(lineno, "entries must be decimal integers") from None
    if order is None or len(rows) != order:
        raise ParseError(len(text.splitlines()) or 1,
                         f"expected {order or '?'} rows")
    return from_cayley_table(rows)


def catalog(name: str, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Named groups: C<n>, D<n> (order 2n), S<n>, A<n>, Q8, prod(<a>,<b>)."""
    name = name.strip()
    if name == "Q8":
        return _quaternion_group()
    if name.startswith("prod(") and name.endswith(")"):
        inner = split_top_level(name[len("prod("):-1])
        if len(inner) != 2:
            raise UnknownGroup(name)
        g = direct_product(catalog(inner[0], max_order), catalog(inner[1], max_order))
        if g.order > max_order:
            raise OrderCapExceeded(f"group order {g.order} exceeds cap {max_order}")
        return g
    for prefix, builder in (("C", _cyclic), ("D", _dihedral),
                            ("S", _symmetric), ("A", _alternating)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return builder(int(name[len(prefix):]), max_order)
    raise UnknownGroup(name)


def parse_group_spec(spec: str, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Catalog names plus perm:<degree>:<cycles;...> and table:<path>."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        fields = spec.split(":", 2)
        if len(fields) != 3:
            raise BadSpec(f"bad perm spec {spec!r}")
        try:
            degree = int(fields[1])
        except ValueError:
            raise BadSpec(f"bad degree in {spec!r}") from None
        gens = [_parse_cycles(tok, degree) for tok in fields[2].split(";") if tok.strip()]
        return group_from_permutations(degree, gens, max_order)
    if spec.startswith("table:"):
        g = load_cayley_file(spec[len("table:"):])
        if g.order > max_order:
            raise OrderCapExceeded(f"group order {g.order} exceeds cap {max_order}")
        return g
    return catalog(spec, max_order)


# -- Dixon character data ----------------------------------------------------------

@dataclass(frozen=True)
class IrrepData:
    """Per-irreducible (dimension, Frobenius-Schur indicator) pairs."""

    entries: tuple[tuple[int, int], ...]
    class_count: int

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.entries)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def admissible_primes(group: FiniteGroup, bound: int = 1_000_000):
    """Primes p = 1 mod exponent with p > 2*floor(sqrt(#G)) and p > 3."""
    e = group.exponent
    low = max(2 * isqrt(group.order), 3)
    p = e + 1
    while p <= bound:
        if p > low and _is_prime(p):
            yield p
        p += e


def _nullspace_mod(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the kernel, via reduced row echelon form; deterministic."""
    rows = [row[:] for row in mat]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def _matmul_mod(a, b, p):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            v = ai[k]
            if v:
                bk = b[k]
                for j in range(cols):
                    oi[j] = (oi[j] + v * bk[j]) % p
    return out


def _solve_in_basis(w, m, p):
    """X with W X = M, for W of full column rank (columns are a basis)."""
    r, s = len(w), len(w[0])
    aug = [w[i][:] + m[i][:] for i in range(r)]
    row = 0
    for col in range(s):
        piv = next(i for i in range(row, r) if aug[i][col] % p)
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], p - 2, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for i in range(r):
            if i != row and aug[i][col] % p:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[row])]
        row += 1
    assert all(x % p == 0 for i in range(row, r) for x in aug[i][s:])
    return [aug[i][s:] for i in range(s)]


def _det_mod(mat, p):
    m = [row[:] for row in mat]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], p - 2, p)
        for i in range(col + 1, n):
            if m[i][col] % p:
                f = m[i][col] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[col])]
    return det % p


def _class_structure_constants(group: FiniteGroup) -> list[list[list[int]]]:
    """a[i][j][k] = #{(x,y) in K_i x K_j : x y = rep_k}."""
    classes = group.conjugacy_classes
    r = len(classes)
    reps = [cl[0] for cl in classes]
    class_of = group.class_of
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k in range(r):
        gk = reps[k]
        for x in range(group.order):
            y = group.cayley[group.inverse[x]][gk]
            a[class_of[x]][class_of[y]][k] += 1
    return a


def irrep_data(group: FiniteGroup, prime: Optional[int] = None,
               prime_bound: int = 1_000_000) -> IrrepData:
    """Irreducible dimensions and Frobenius-Schur indicators by Dixon's method.

    Class-sum matrices are simultaneously diagonalized over F_p for a prime
    p = 1 mod exp(G) with p > 2*floor(sqrt(#G)) (so integer degrees lift
    uniquely from (0, p/2)) and p > 3 (so indicators lift from {-1,0,1}).
    The indicator is computed with the normalized Frobenius-Schur sum
    (1/#G) sum_g chi(g^2).
    """
    n = group.order
    classes = group.conjugacy_classes
    r = len(classes)
    reps = [cl[0] for cl in classes]
    sizes = [len(cl) for cl in classes]
    class_of = group.class_of

    if prime is None:
        prime = next(admissible_primes(group, prime_bound), None)
        if prime is None:
            raise PrimeSearchFailed(f"no admissible prime below {prime_bound}")
    else:
        e = group.exponent
        if prime % e != 1 % e or prime <= max(2 * isqrt(n), 3) or not _is_prime(prime):
            raise PrimeSearchFailed(f"{prime} is not admissible for this group")
    p = prime

    a = _class_structure_constants(group)
    mats = [[[a[i][j][k] % p for k in range(r)] for j in range(r)] for i in range(r)]

    # one common eigenvector per irreducible: refine joint eigenspaces
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(w[0]) == 1 for w in spaces):
            break
        refined = []
        for w in spaces:
            s = len(w[0])
            if s == 1:
                refined.append(w)
                continue
            b = _solve_in_basis(w, _matmul_mod(mats[i], w, p), p)
            eigenvalues = [lam for lam in range(p)
                           if _det_mod([[(b[x][y] - (lam if x == y else 0)) % p
                                         for y in range(s)] for x in range(s)], p) == 0]
            for lam in eigenvalues:
                shifted = [[(b[x][y] - (lam if x == y else 0)) % p for y in range(s)]
                           for x in range(s)]
                vecs = _nullspace_mod(shifted, p)
                cols = [[v[x] for v in vecs] for x in range(s)]
                refined.append(_matmul_mod(w, cols, p))
        spaces = refined
    assert len(spaces) == r and all(len(w[0]) == 1 for w in spaces)

    inv_class = [class_of[group.inverse[reps[j]]] for j in range(r)]
    sq_class = [class_of[group.cayley[reps[j]][reps[j]]] for j in range(r)]
    half = p // 2

    entries = []
    for w in spaces:
        v = [w[j][0] % p for j in range(r)]
        assert v[0] % p, "eigenvector not normalizable at the identity class"
        scale = pow(v[0], p - 2, p)
        omega = [x * scale % p for x in v]
        s_val = sum(omega[j] * omega[inv_class[j]] * pow(sizes[j], p - 2, p)
                    for j in range(r)) % p
        d_sq = n * pow(s_val, p - 2, p) % p
        d = next((t for t in range(1, half + 1) if t * t % p == d_sq), None)
        assert d is not None, "modular degree has no integer lift"
        chi = [d * omega[j] * pow(sizes[j], p - 2, p) % p for j in range(r)]
        nu_mod = pow(n, p - 2, p) * sum(sizes[j] * chi[sq_class[j]] for j in range(r)) % p
        assert nu_mod in (0, 1, p - 1), "indicator is not in {-1,0,1}"
        nu = -1 if nu_mod == p - 1 else nu_mod
        entries.append((d, nu))

    entries.sort(reverse=True)
    data = IrrepData(tuple(entries), r)
    assert sum(d * d for d, _ in entries) == n
    assert all(d % 2 == 0 for d, nu in entries if nu == -1)
    return data


# -- homomorphism counting -----------------------------------------------------------

def hom_count_orientable(group: FiniteGroup, genus: int,
                         max_work: int = DEFAULT_WORK_CAP) -> int:
    """#Hom(pi_1 of the genus-g orientable surface, G) by enumeration of the
    2g-tuples satisfying the product-of-commutators relator."""
    if genus < 0:
        raise BadSpec("genus must be >= 0")
    if genus == 0:
        return 1
    if group.order ** (2 * genus) > max_work:
        raise WorkCapExceeded(
            f"{group.order}^{2 * genus} relator evaluations exceed cap {max_work}")
    return kernels.hom_count_orientable(
        group.flat_cayley, group.flat_inverse, group.order, group.identity, genus)


def hom_count_nonorientable(group: FiniteGroup, crosscaps: int,
                            max_work: int = DEFAULT_WORK_CAP) -> int:
    """#Hom for the crosscap-k surface: k-tuples with product of squares 1."""
    if crosscaps < 0:
        raise BadSpec("crosscaps must be >= 0")
    if crosscaps == 0:
        return 1
    if group.order ** crosscaps > max_work:
        raise WorkCapExceeded(
            f"{group.order}^{crosscaps} relator evaluations exceed cap {max_work}")
    return kernels.hom_count_nonorientable(
        group.flat_cayley, group.flat_inverse, group.order, group.identity, crosscaps)


# -- consistent labelings --------------------------------------------------------------

def labeling_count(group: FiniteGroup, tri, assignment=None,
                   max_work: int = DEFAULT_WORK_CAP) -> int:
    """Number of labelings of oriented edges by group elements with inverse
    labels on reversed edges and product 1 around every triangle.

    Each edge gets one label along the direction of its lower-numbered side;
    triangles are traversed in the cyclic order given by the sign assignment
    (all +1 by default).  Depth-first search over edge labels: a triangle
    with a single unknown position determines it, remaining choices branch.
    """
    n = group.order
    if assignment is None:
        assignment = (1,) * tri.face_count
    edge_index = {}
    canonical = {}
    for ei, (a, b, f) in enumerate(tri.edges):
        edge_index[a] = edge_index[b] = ei
        canonical[a], canonical[b] = True, False

    constraints = []   # per triangle: three (edge, exponent) in traversal order
    for t in range(tri.face_count):
        walk = [(s, 1) for s in range(3)] if assignment[t] == 1 else [(s, -1) for s in (2, 1, 0)]
        word = []
        for s, wdir in walk:
            i = 3 * t + s
            own = 1 if canonical[i] else (1 if tri.flip[i] else -1)
            word.append((edge_index[i], own * wdir))
        constraints.append(word)

    edges_of = [[] for _ in range(tri.edge_count)]
    for t, word in enumerate(constraints):
        for e, _ in word:
            edges_of[e].append(t)

    labels: list[Optional[int]] = [None] * tri.edge_count
    work = 0

    def value(e: int, exp: int) -> int:
        v = labels[e]
        return v if exp == 1 else group.inverse[v]

    def try_propagate(trail: list[int]) -> bool:
        """Force single-unknown triangles; False on contradiction."""
        nonlocal work
        changed = True
        while changed:
            changed = False
            for word in constraints:
                unknown = [(e, x) for e, x in word if labels[e] is None]
                if not unknown:
                    prod = group.identity
                    for e, x in word:
                        prod = group.cayley[prod][value(e, x)]
                    if prod != group.identity:
                        return False
                elif len(unknown) == 1:
                    e, exp = unknown[0]
                    if sum(1 for ee, _ in word if ee == e) > 1:
                        continue   # same edge twice in this triangle: branch instead
                    pre = group.identity
                    post = group.identity
                    seen_unknown = False
                    for ee, x in word:
                        if ee == e and not seen_unknown:
                            seen_unknown = True
                            continue
                        if not seen_unknown:
                            pre = group.cayley[pre][value(ee, x)]
                        else:
                            post = group.cayley[post][value(ee, x)]
                    forced = group.cayley[group.inverse[pre]][group.inverse[post]]
                    if exp == -1:
                        forced = group.inverse[forced]
                    work += 1
                    if work > max_work:
                        raise WorkCapExceeded(f"labeling search exceeded cap {max_work}")
                    labels[e] = forced
                    trail.append(e)
                    changed = True
        return True

    def dfs() -> int:
        nonlocal work
        trail: list[int] = []
        try:
            if not try_propagate(trail):
                return 0
            free = next((e for e in range(tri.edge_count) if labels[e] is None), None)
            if free is None:
                return 1
            total = 0
            for val in range(n):
                work += 1
                if work > max_work:
                    raise WorkCapExceeded(f"labeling search exceeded cap {max_work}")
                labels[free] = val
                total += dfs()
                labels[free] = None
            return total
        finally:
            for e in trail:
                labels[e] = None

    return dfs()
