"""State-sum tensor networks on triangulated surfaces.

Each triangle carries the cyclic triple form of the algebra over its three
flags, each gluing carries the copairing (star-twisted when the adjacent
orientations disagree); contracting everything yields the invariant.
Tensors are stored sparsely with integer entries over a common denominator,
so the whole contraction runs in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Optional

from .algebra import ANTI, PLAIN, SWAP, BasedAlgebra, Block, StructuredAlgebra
from .errors import PlanMismatch, StarRequired, UnrecognizedTopology
from .grouptheory import (
    FiniteGroup,
    IrrepData,
    hom_count_nonorientable,
    hom_count_orientable,
)
from .surface import OrientationAssignment, Triangulation

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SparseTensor:
    """Nonzero entries only; value at idx is data[idx] / den."""

    rank: int
    data: dict[tuple[int, ...], int]
    den: int

    def entries(self) -> dict[tuple[int, ...], Fraction]:
        return {idx: Fraction(v, self.den) for idx, v in self.data.items()}


def _to_common_den(values: dict[tuple[int, ...], Fraction], rank: int) -> SparseTensor:
    den = reduce(lcm, (v.denominator for v in values.values()), 1)
    return SparseTensor(rank, {k: int(v * den) for k, v in values.items() if v}, den)


@dataclass(frozen=True)
class TensorNetwork:
    """Triangle nodes 0..F-1, edge nodes F..F+E-1.

    Wire w corresponds to flag w (flat side index): it joins axis w%3 of
    triangle node w//3 to the matching axis of the edge node of its gluing.
    """

    dim: int
    tensors: tuple[SparseTensor, ...]
    legs: tuple[tuple[int, ...], ...]      # wire ids per node, in axis order
    face_count: int
    edge_count: int

    @property
    def wire_count(self) -> int:
        return 3 * self.face_count

    def wire_endpoints(self) -> list[list[tuple[int, int]]]:
        ends: list[list[tuple[int, int]]] = [[] for _ in range(self.wire_count)]
        for node, wires in enumerate(self.legs):
            for axis, w in enumerate(wires):
                ends[w].append((node, axis))
        return ends


@dataclass(frozen=True)
class ContractionPlan:
    order: tuple[int, ...]
    cost_estimate: int


def _t3_values(algebra: BasedAlgebra) -> dict[tuple[int, int, int], Fraction]:
    """All nonzero T3(e_i, e_j, e_k) = sum_l c[i][j][l] * gram[l][k]."""
    D = algebra.dim
    gram = algebra.gram
    out = {}
    for i in range(D):
        for j in range(D):
            row = algebra.mult_rows[i][j]
            if not row:
                continue
            acc = [_ZERO] * D
            for l, v in row.items():
                gl = gram[l]
                for k in range(D):
                    if gl[k]:
                        acc[k] += v * gl[k]
            for k, v in enumerate(acc):
                if v:
                    out[(i, j, k)] = v
    return out


def build_network(algebra: BasedAlgebra, tri: Triangulation,
                  assignment: OrientationAssignment) -> TensorNetwork:
    """Assemble the state-sum network for one orientation assignment.

    Triangle node entries are T3 over the triangle's sides, inputs taken in
    the cyclic order given by the triangle's sign; edge nodes carry the
    copairing, composed with the involution on one leg when the gluing is
    classified "disagree" under the assignment.
    """
    F = tri.face_count
    twisted = [not tri.edge_agrees(a, assignment) for a, _, _ in tri.edges]
    if any(twisted) and algebra.star is None:
        raise StarRequired("orientation-reversing gluing needs a *-algebra")

    t3 = _t3_values(algebra)
    plain_tri = _to_common_den(t3, 3)
    reversed_tri = _to_common_den({(k, j, i): v for (i, j, k), v in t3.items()}, 3)

    D = algebra.dim
    p = algebra.copairing
    pair_vals = {(a, b): p[a][b] for a in range(D) for b in range(D) if p[a][b]}
    plain_edge = _to_common_den(pair_vals, 2)
    twisted_edge = None
    if any(twisted):
        s = algebra.star
        ps = {}
        for (a, b), v in pair_vals.items():
            for b2 in range(D):
                if s[b][b2]:
                    ps[(a, b2)] = ps.get((a, b2), _ZERO) + v * s[b][b2]
        twisted_edge = _to_common_den(ps, 2)

    tensors = [plain_tri if assignment[t] == 1 else reversed_tri for t in range(F)]
    legs: list[tuple[int, ...]] = [(3 * t, 3 * t + 1, 3 * t + 2) for t in range(F)]
    for ei, (a, b, _) in enumerate(tri.edges):
        tensors.append(twisted_edge if twisted[ei] else plain_edge)
        legs.append((a, b))
    return TensorNetwork(D, tuple(tensors), tuple(legs), F, tri.edge_count)


def plan_contraction(network: TensorNetwork) -> ContractionPlan:
    """Greedy: repeatedly contract the wire whose resulting intermediate
    tensor is smallest, ties broken by lowest wire index.

    The size accounts for every wire running between the same two clusters
    (they are contracted back-to-back, the trailing ones as traces), so a
    merge that closes several wires at once is costed by the tensor that is
    actually left over.  Deterministic.
    """
    D = max(network.dim, 1)
    parent = list(range(len(network.tensors)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = [t.rank for t in network.tensors]
    ends = network.wire_endpoints()
    remaining = set(range(network.wire_count))
    order = []
    cost = 0
    while remaining:
        # wires between each pair of live clusters
        groups: dict[tuple[int, int], list[int]] = {}
        for w in remaining:
            (na, _), (nb, _) = ends[w]
            ra, rb = find(na), find(nb)
            groups.setdefault((min(ra, rb), max(ra, rb)), []).append(w)
        best = None
        for (ra, rb), wires in groups.items():
            if ra == rb:
                new_rank = rank[ra] - 2 * len(wires)
            else:
                new_rank = rank[ra] + rank[rb] - 2 * len(wires)
            key = (D ** max(new_rank, 0), min(wires))
            if best is None or key < best[0]:
                best = (key, ra, rb, sorted(wires), new_rank)
        _, ra, rb, wires, new_rank = best
        order.extend(wires)
        remaining.difference_update(wires)
        # cost of the merge step, then of each trailing trace
        if ra == rb:
            r = rank[ra]
            for _ in wires:
                r -= 2
                cost += D ** r
        else:
            r = rank[ra] + rank[rb] - 2
            cost += D ** r
            for _ in wires[1:]:
                r -= 2
                cost += D ** r
        root = min(ra, rb)
        parent[ra] = parent[rb] = root
        rank[root] = new_rank
    return ContractionPlan(tuple(order), cost)


def sequential_plan(network: TensorNetwork) -> ContractionPlan:
    """Left-to-right reference plan (wire index order)."""
    D = max(network.dim, 1)
    parent = list(range(len(network.tensors)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = [t.rank for t in network.tensors]
    ends = network.wire_endpoints()
    cost = 0
    for w in range(network.wire_count):
        (na, _), (nb, _) = ends[w]
        ra, rb = find(na), find(nb)
        new_rank = rank[ra] - 2 if ra == rb else rank[ra] + rank[rb] - 2
        cost += D ** new_rank
        root = min(ra, rb)
        parent[ra] = parent[rb] = root
        rank[root] = new_rank
    return ContractionPlan(tuple(range(network.wire_count)), cost)


def _trace(data, legs, i, j):
    out: dict[tuple[int, ...], int] = {}
    for idx, v in data.items():
        if idx[i] == idx[j]:
            key = tuple(x for a, x in enumerate(idx) if a not in (i, j))
            out[key] = out.get(key, 0) + v
    new_legs = tuple(w for a, w in enumerate(legs) if a not in (i, j))
    return out, new_legs


def _join(data_a, legs_a, ia, data_b, legs_b, ib):
    buckets: dict[int, list] = {}
    for idx, v in data_b.items():
        buckets.setdefault(idx[ib], []).append((idx[:ib] + idx[ib + 1:], v))
    out: dict[tuple[int, ...], int] = {}
    for idx, va in data_a.items():
        hits = buckets.get(idx[ia])
        if not hits:
            continue
        base = idx[:ia] + idx[ia + 1:]
        for rest, vb in hits:
            key = base + rest
            out[key] = out.get(key, 0) + va * vb
    new_legs = tuple(w for a, w in enumerate(legs_a) if a != ia) + \
        tuple(w for a, w in enumerate(legs_b) if a != ib)
    return out, new_legs


def contract(network: TensorNetwork, plan: ContractionPlan) -> Fraction:
    """Execute the plan; exact rational result."""
    if sorted(plan.order) != list(range(network.wire_count)):
        raise PlanMismatch("plan must contract every wire exactly once")
    data = [dict(t.data) for t in network.tensors]
    dens = [t.den for t in network.tensors]
    legs = [tuple(l) for l in network.legs]
    alive = [True] * len(network.tensors)

    def locate(w):
        spots = [(n, a) for n in range(len(legs)) if alive[n]
                 for a, wire in enumerate(legs[n]) if wire == w]
        if len(spots) != 2:
            raise PlanMismatch(f"wire {w} does not have two live endpoints")
        return spots

    for w in plan.order:
        (na, ia), (nb, ib) = locate(w)
        if na == nb:
            data[na], legs[na] = _trace(data[na], legs[na], ia, ib)
        else:
            na, ia, nb, ib = (na, ia, nb, ib) if na < nb else (nb, ib, na, ia)
            data[na], legs[na] = _join(data[na], legs[na], ia, data[nb], legs[nb], ib)
            dens[na] *= dens[nb]
            alive[nb] = False
    result = Fraction(1)
    for n in range(len(legs)):
        if alive[n]:
            if legs[n]:
                raise PlanMismatch("plan left a tensor with open legs")
            result *= Fraction(data[n].get((), 0), dens[n])
    return result


# -- invariants ----------------------------------------------------------------

def invariant_direct(algebra: BasedAlgebra, tri: Triangulation) -> Fraction:
    """Contract the state sum.  Orientable surfaces use the breadth-first
    orientation (no star needed); otherwise all triangles keep their default
    orientation and the star twist dresses the disagreeing gluings."""
    assignment = tri.orientation
    if assignment is None:
        assignment = (1,) * tri.face_count
    network = build_network(algebra, tri, assignment)
    return contract(network, plan_contraction(network))


def invariant_structured(structured: StructuredAlgebra, tri: Triangulation) -> Fraction:
    """Closed-form evaluation per classified block:

    plain n: n^chi; swap n: n^chi times the number of orientations (2 or 0);
    anti n: (n/2)^chi * (-2)^chi.
    """
    chi = tri.euler_characteristic
    orientable = tri.is_orientable
    total = Fraction(0)
    for block in structured.blocks:
        n = block.size
        if block.kind == PLAIN:
            total += Fraction(n) ** chi
        elif block.kind == SWAP:
            total += (Fraction(n) ** chi) * (2 if orientable else 0)
        else:
            total += (Fraction(n, 2) ** chi) * (Fraction(-2) ** chi)
    return total


def blocks_from_irreps(irreps: IrrepData) -> StructuredAlgebra:
    """Classified *-block multiset of a group algebra from (d, nu) data.

    Indicator +1 gives a transpose block, -1 an antisymmetric block, and the
    0 entries pair up into swap blocks (each conjugate pair contributes one)."""
    blocks = []
    complex_dims = []
    for d, nu in irreps.entries:
        if nu == 1:
            blocks.append(Block(PLAIN, d))
        elif nu == -1:
            blocks.append(Block(ANTI, d))
        else:
            complex_dims.append(d)
    complex_dims.sort()
    assert len(complex_dims) % 2 == 0
    for i in range(0, len(complex_dims), 2):
        assert complex_dims[i] == complex_dims[i + 1]
        blocks.append(Block(SWAP, complex_dims[i]))
    return StructuredAlgebra(tuple(blocks))


# -- the two sides of the counting identities ------------------------------------

def mednykh_lhs(irreps: IrrepData, chi: int, orientable: bool) -> Fraction:
    """Sum over irreducibles of d^chi (orientable) or (nu*d)^chi with the
    nu = 0 terms dropped (non-orientable)."""
    total = Fraction(0)
    for d, nu in irreps.entries:
        if orientable:
            total += Fraction(d) ** chi
        elif nu:
            total += Fraction(nu * d) ** chi
    return total


def surface_type(tri: Triangulation) -> tuple[bool, int]:
    """(orientable, genus-or-crosscaps) from chi and orientability."""
    chi = tri.euler_characteristic
    if tri.is_orientable:
        if chi > 2 or chi % 2:
            raise UnrecognizedTopology(f"orientable with chi = {chi}")
        return True, (2 - chi) // 2
    if chi > 1:
        raise UnrecognizedTopology(f"non-orientable with chi = {chi}")
    return False, 2 - chi


def mednykh_rhs(group: FiniteGroup, tri: Triangulation,
                max_work: int = 10 ** 8) -> Fraction:
    """#G^(chi - 1) * #Hom(pi_1(S), G) for the topology of the triangulation."""
    orientable, count_param = surface_type(tri)
    if orientable:
        homs = hom_count_orientable(group, count_param, max_work)
    else:
        homs = hom_count_nonorientable(group, count_param, max_work)
    chi = tri.euler_characteristic
    return (Fraction(group.order) ** (chi - 1)) * homs
