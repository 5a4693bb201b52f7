"""Closed surfaces as Delta-complex triangulations.

A surface is a set of triangles whose 3F sides are glued in pairs.  Within
triangle t, side s is directed from corner s to corner (s+1) mod 3.  A gluing
carries a flip bit: flip=False identifies the two directed sides head-to-tail
(consistent when both triangles keep the default local orientation),
flip=True identifies them head-to-head.  Self-gluings between two different
sides of one triangle are allowed; a side is never glued to itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Iterable, NamedTuple, Optional

from .errors import (
    BadValence,
    IncompleteGluing,
    InconsistentFlip,
    IndexOutOfRange,
    InvalidCrosscaps,
    NotAnInvolution,
    ParseError,
    SelfGluedEdge,
)


class Side(NamedTuple):
    triangle: int
    slot: int


Corner = tuple[int, int]            # (triangle, corner index 0..2)
OrientationAssignment = tuple[int, ...]   # one sign +1/-1 per triangle

# Gluing entry format accepted by from_gluing_data and used by .tri files.
GluingEntry = tuple[int, int, int, int, bool]


def _flat(t: int, s: int) -> int:
    return 3 * t + s


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Triangulation:
    """Immutable gluing data for a closed triangulated surface.

    ``partner[i]`` is the flat index (3*triangle + slot) of the side glued to
    side i and ``flip[i]`` its flip bit; both are shared by the two members of
    each pair.
    """

    face_count: int
    partner: tuple[int, ...]
    flip: tuple[bool, ...]

    # -- basic queries --------------------------------------------------

    def partner_of(self, side: Side) -> tuple[Side, bool]:
        i = _flat(*self._check_side(side))
        p = self.partner[i]
        return Side(p // 3, p % 3), self.flip[i]

    def _check_side(self, side) -> Side:
        t, s = side
        if not (0 <= t < self.face_count and 0 <= s < 3):
            raise IndexOutOfRange(f"no side {side} in a {self.face_count}-triangle surface")
        return Side(t, s)

    @cached_property
    def edges(self) -> tuple[tuple[int, int, bool], ...]:
        """Gluing pairs as (lower flat side, higher flat side, flip)."""
        out = []
        for a, b in enumerate(self.partner):
            if a < b:
                out.append((a, b, self.flip[a]))
        return tuple(out)

    @property
    def edge_count(self) -> int:
        return 3 * self.face_count // 2

    @cached_property
    def vertex_orbits(self) -> tuple[tuple[Corner, ...], ...]:
        """Corner orbits under the gluing, each sorted, ordered by first corner."""
        uf = _UnionFind(3 * self.face_count)
        for a, b, f in self.edges:
            t1, s1 = divmod(a, 3)
            t2, s2 = divmod(b, 3)
            if f:
                # head-to-head: tails match and heads match
                uf.union(_flat(t1, s1), _flat(t2, s2))
                uf.union(_flat(t1, (s1 + 1) % 3), _flat(t2, (s2 + 1) % 3))
            else:
                # head-to-tail
                uf.union(_flat(t1, s1), _flat(t2, (s2 + 1) % 3))
                uf.union(_flat(t1, (s1 + 1) % 3), _flat(t2, s2))
        orbits: dict[int, list[Corner]] = {}
        for c in range(3 * self.face_count):
            orbits.setdefault(uf.find(c), []).append((c // 3, c % 3))
        return tuple(tuple(orbits[r]) for r in sorted(orbits))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_orbits)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    # -- orientability ---------------------------------------------------

    @cached_property
    def orientation(self) -> Optional[OrientationAssignment]:
        """A sign per triangle making every gluing "agree", or None.

        A gluing agrees when the induced directed edges are opposite after the
        per-triangle signs, i.e. signs equal iff flip=False.  Signs are found
        by breadth-first propagation from triangle 0 (each component's lowest
        triangle gets +1), then every gluing is checked.
        """
        signs = [0] * self.face_count
        for root in range(self.face_count):
            if signs[root]:
                continue
            signs[root] = 1
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for s in range(3):
                    i = _flat(u, s)
                    v = self.partner[i] // 3
                    want = -signs[u] if self.flip[i] else signs[u]
                    if signs[v] == 0:
                        signs[v] = want
                        queue.append(v)
                    elif signs[v] != want:
                        return None
        return tuple(signs)

    @property
    def is_orientable(self) -> bool:
        return self.orientation is not None

    def edge_agrees(self, flat_side: int, assignment: OrientationAssignment) -> bool:
        """Classify the gluing through flat_side under a sign assignment."""
        t1 = flat_side // 3
        t2 = self.partner[flat_side] // 3
        differ = assignment[t1] != assignment[t2]
        return (not self.flip[flat_side]) ^ differ

    # -- serialization ---------------------------------------------------

    def serialize(self) -> str:
        lines = [f"tri-v1 {self.face_count}"]
        for a, b, f in self.edges:
            lines.append(f"{a // 3} {a % 3} {b // 3} {b % 3} {int(f)}")
        return "\n".join(lines) + "\n"


def from_gluing_data(face_count: int, gluings: Iterable[GluingEntry]) -> Triangulation:
    """Build and validate a Triangulation from (t1, s1, t2, s2, flip) pairs."""
    if face_count < 0:
        raise IndexOutOfRange("negative face count")
    n = 3 * face_count
    partner = [-1] * n
    flip = [False] * n
    for t1, s1, t2, s2, f in gluings:
        for t, s in ((t1, s1), (t2, s2)):
            if not (0 <= t < face_count and 0 <= s < 3):
                raise IndexOutOfRange(f"side ({t},{s}) out of range")
        a, b = _flat(t1, s1), _flat(t2, s2)
        f = bool(f)
        if a == b:
            raise NotAnInvolution(f"side ({t1},{s1}) glued to itself")
        if partner[a] == b and partner[b] == a:
            if flip[a] != f:
                raise InconsistentFlip(f"pair ({t1},{s1})-({t2},{s2}) listed with both flips")
            raise NotAnInvolution(f"pair ({t1},{s1})-({t2},{s2}) listed twice")
        for x in (a, b):
            if partner[x] != -1:
                raise NotAnInvolution(f"side ({x // 3},{x % 3}) glued twice")
        partner[a], partner[b] = b, a
        flip[a] = flip[b] = f
    for x in range(n):
        if partner[x] == -1:
            raise IncompleteGluing(f"side ({x // 3},{x % 3}) left unglued")
    return Triangulation(face_count, tuple(partner), tuple(flip))


def parse(text: str) -> Triangulation:
    """Parse the .tri text format (see Triangulation.serialize)."""
    entries = []
    face_count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if face_count is None:
            if len(tokens) != 2 or tokens[0] != "tri-v1":
                raise ParseError(lineno, "expected header 'tri-v1 <faces>'")
            try:
                face_count = int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad face count {tokens[1]!r}") from None
            continue
        if len(tokens) != 5:
            raise ParseError(lineno, f"expected 5 fields, got {len(tokens)}")
        try:
            t1, s1, t2, s2 = (int(tok) for tok in tokens[:4])
        except ValueError:
            raise ParseError(lineno, "sides must be decimal integers") from None
        if tokens[4] not in ("0", "1"):
            raise ParseError(lineno, f"flip must be 0 or 1, got {tokens[4]!r}")
        entries.append((t1, s1, t2, s2, tokens[4] == "1"))
    if face_count is None:
        raise ParseError(1, "empty input")
    return from_gluing_data(face_count, entries)


# -- standard surfaces --------------------------------------------------------

def _fan(word: list[tuple[int, int]]) -> Triangulation:
    """Fan triangulation of a polygon-with-identifications.

    word lists the polygon sides in boundary order as (letter, exponent);
    every letter occurs exactly twice.  Triangle i has corner 0 at the center
    of the fan and corners 1, 2 at polygon vertices i, i+1, so side 1 runs
    along polygon side i and sides 0 and 2 are spokes.
    """
    m = len(word)
    entries: list[GluingEntry] = []
    for i in range(m):
        entries.append((i, 2, (i + 1) % m, 0, False))
    seen: dict[int, tuple[int, int]] = {}
    for i, (letter, exp) in enumerate(word):
        if letter in seen:
            j, prev_exp = seen.pop(letter)
            # same exponent means same direction along the identified edge
            entries.append((j, 1, i, 1, exp == prev_exp))
        else:
            seen[letter] = (i, exp)
    if seen:
        raise ValueError(f"unpaired letters in polygon word: {sorted(seen)}")
    return from_gluing_data(m, entries)


def orientable_genus_surface(genus: int) -> Triangulation:
    """Fan of the 4g-gon a1 b1 a1' b1' ... (2-gon a a' for the sphere)."""
    if genus < 0:
        raise IndexOutOfRange("genus must be >= 0")
    if genus == 0:
        return _fan([(0, 1), (0, -1)])
    word = []
    for k in range(genus):
        a, b = 2 * k, 2 * k + 1
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return _fan(word)


def nonorientable_surface(crosscaps: int) -> Triangulation:
    """Fan of the 2k-gon a1 a1 a2 a2 ... ak ak."""
    if crosscaps < 1:
        raise InvalidCrosscaps("need at least one crosscap")
    word = []
    for k in range(crosscaps):
        word += [(k, 1), (k, 1)]
    return _fan(word)


# -- Pachner moves ------------------------------------------------------------

def _pairs(tri: Triangulation) -> list[GluingEntry]:
    return [(a // 3, a % 3, b // 3, b % 3, f) for a, b, f in tri.edges]


_MIRROR_SLOT = (2, 1, 0)    # side relabeling when a triangle is reflected
_MIRROR_CORNER = (0, 2, 1)


def _reflect(tri: Triangulation, t: int) -> Triangulation:
    """Reverse the local orientation of triangle t.

    Represents the same surface: sides of t are relabeled 0<->2 and every
    gluing with exactly one end on t has its flip toggled (a self-gluing of t
    reverses both sides, so its flip is unchanged).
    """
    entries = []
    for t1, s1, t2, s2, f in _pairs(tri):
        on1, on2 = t1 == t, t2 == t
        if on1:
            s1 = _MIRROR_SLOT[s1]
        if on2:
            s2 = _MIRROR_SLOT[s2]
        entries.append((t1, s1, t2, s2, f ^ (on1 != on2)))
    return from_gluing_data(tri.face_count, entries)


def pachner_13(tri: Triangulation, face: int) -> Triangulation:
    """Subdivide one triangle into three around a new interior vertex.

    Old side i of the face becomes side 1 of triangle [face, F, F+1][i]; the
    new vertex sits at corner 0 of each of the three, joined by spokes.  The
    new vertex is the orbit of corner (face, 0) in the result.
    """
    if not (0 <= face < tri.face_count):
        raise IndexOutOfRange(f"no face {face}")
    F = tri.face_count
    owner = (face, F, F + 1)
    entries: list[GluingEntry] = []

    def remap(t: int, s: int) -> tuple[int, int]:
        return (owner[s], 1) if t == face else (t, s)

    for t1, s1, t2, s2, f in _pairs(tri):
        t1, s1 = remap(t1, s1)
        t2, s2 = remap(t2, s2)
        entries.append((t1, s1, t2, s2, f))
    for i in range(3):
        entries.append((owner[i], 2, owner[(i + 1) % 3], 0, False))
    return from_gluing_data(F + 2, entries)


def pachner_22(tri: Triangulation, side: Side) -> Triangulation:
    """Flip the diagonal of the quadrilateral around an edge.

    The edge's two sides must lie on distinct triangles.  If the gluing has
    flip=True the partner triangle is first reflected, so the four outer
    sides keep their identifications with flip bits recomputed.
    """
    a = _flat(*tri._check_side(side))
    b = tri.partner[a]
    ta, tb = a // 3, b // 3
    if ta == tb:
        raise SelfGluedEdge(f"both sides of the edge lie on triangle {ta}")
    if tri.flip[a]:
        tri = _reflect(tri, tb)
        b = tri.partner[a]
        assert not tri.flip[a] and b // 3 == tb
    sa, sb = a % 3, b % 3
    # outer sides keep their direction; the new diagonal is (ta,2)-(tb,2)
    remap = {
        (ta, (sa + 2) % 3): (ta, 0),
        (tb, (sb + 1) % 3): (ta, 1),
        (tb, (sb + 2) % 3): (tb, 0),
        (ta, (sa + 1) % 3): (tb, 1),
    }
    entries: list[GluingEntry] = [(ta, 2, tb, 2, False)]
    for t1, s1, t2, s2, f in _pairs(tri):
        if (t1, s1) in ((ta, sa), (tb, sb)):
            continue
        t1, s1 = remap.get((t1, s1), (t1, s1))
        t2, s2 = remap.get((t2, s2), (t2, s2))
        entries.append((t1, s1, t2, s2, f))
    return from_gluing_data(tri.face_count, entries)


def pachner_31(tri: Triangulation, corner: Corner) -> Triangulation:
    """Merge the three triangles around a valence-3 vertex into one.

    The vertex is given by any corner of its orbit; the orbit must have
    exactly three corners on three distinct triangles.  Spoke gluings with
    flip=True are normalized away by reflecting triangles while walking
    around the vertex (always possible: a vertex star is a disc).  The merged
    triangle is appended after the surviving triangles are compacted.
    """
    tri._check_side(corner)  # same bounds as a side
    orbit = None
    for orb in tri.vertex_orbits:
        if tuple(corner) in orb:
            orbit = orb
            break
    assert orbit is not None
    tris = {t for t, _ in orbit}
    if len(orbit) != 3 or len(tris) != 3:
        raise BadValence(
            f"vertex orbit has {len(orbit)} corners on {len(tris)} triangles; need 3 on 3")

    center = {t: c for t, c in orbit}
    t0 = min(tris)
    cycle = [t0]
    for _ in range(2):
        t = cycle[-1]
        i = _flat(t, center[t])          # spoke whose tail is the vertex
        if tri.flip[i]:
            nxt = tri.partner[i] // 3
            tri = _reflect(tri, nxt)
            center[nxt] = _MIRROR_CORNER[center[nxt]]
        nxt = tri.partner[_flat(t, center[t])] // 3
        assert nxt in tris and nxt not in cycle
        cycle.append(nxt)
    # after normalization all three spokes must be flip=False
    assert all(not tri.flip[_flat(t, center[t])] for t in cycle)

    # surviving triangles keep their order; the merged triangle goes last
    old_to_new = {}
    idx = 0
    for t in range(tri.face_count):
        if t not in tris:
            old_to_new[t] = idx
            idx += 1
    merged = idx
    outer = {t: (center[t] + 1) % 3 for t in cycle}
    remap = {
        (cycle[0], outer[cycle[0]]): (merged, 0),
        (cycle[2], outer[cycle[2]]): (merged, 1),
        (cycle[1], outer[cycle[1]]): (merged, 2),
    }
    spokes = {_flat(t, center[t]) for t in cycle}
    spokes |= {tri.partner[i] for i in spokes}

    entries: list[GluingEntry] = []
    for t1, s1, t2, s2, f in _pairs(tri):
        if _flat(t1, s1) in spokes:
            continue
        t1, s1 = remap.get((t1, s1), (old_to_new.get(t1, -1), s1))
        t2, s2 = remap.get((t2, s2), (old_to_new.get(t2, -1), s2))
        entries.append((t1, s1, t2, s2, f))
    return from_gluing_data(tri.face_count - 2, entries)


# -- random walks -------------------------------------------------------------

def _legal_moves(tri: Triangulation) -> list[tuple[str, object]]:
    moves: list[tuple[str, object]] = [("13", f) for f in range(tri.face_count)]
    for a, b, _ in tri.edges:
        if a // 3 != b // 3:
            moves.append(("22", Side(a // 3, a % 3)))
    for orb in tri.vertex_orbits:
        if len(orb) == 3 and len({t for t, _ in orb}) == 3:
            moves.append(("31", orb[0]))
    return moves


def _apply_move(tri: Triangulation, kind: str, arg) -> Triangulation:
    if kind == "13":
        return pachner_13(tri, arg)
    if kind == "22":
        return pachner_22(tri, arg)
    return pachner_31(tri, arg)


def iter_pachner_walk(tri: Triangulation, steps: int, seed: int):
    """Yield the triangulation after each of `steps` random legal moves.

    Moves are drawn uniformly from the currently legal ones (every face for
    1-3, every two-triangle edge for 2-2, every valence-3 vertex on distinct
    triangles for 3-1) using the Mersenne Twister seeded with `seed`, so the
    walk is reproducible.
    """
    rng = Random(seed)
    for _ in range(steps):
        moves = _legal_moves(tri)
        kind, arg = moves[rng.randrange(len(moves))]
        tri = _apply_move(tri, kind, arg)
        yield tri


def random_pachner_walk(tri: Triangulation, steps: int, seed: int) -> Triangulation:
    for tri in iter_pachner_walk(tri, steps, seed):
        pass
    return tri
