import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticetqft import surface
from latticetqft.errors import (
    BadValence,
    IncompleteGluing,
    InconsistentFlip,
    IndexOutOfRange,
    InvalidCrosscaps,
    NotAnInvolution,
    ParseError,
    SelfGluedEdge,
)
from conftest import TETRA_GLUINGS

# two folded triangles glued along their unfolded side: a sphere with a
# self-glued edge on each triangle
FOLDED_SPHERE = [(0, 0, 0, 1, False), (1, 0, 1, 1, False), (0, 2, 1, 2, False)]


def test_tetrahedron_counts(tetrahedron):
    assert tetrahedron.face_count == 4
    assert tetrahedron.edge_count == 6
    assert tetrahedron.vertex_count == 4
    assert tetrahedron.euler_characteristic == 2
    assert tetrahedron.is_orientable


def test_gluing_validation_errors():
    with pytest.raises(NotAnInvolution):
        surface.from_gluing_data(1, [(0, 0, 0, 0, False)])
    with pytest.raises(NotAnInvolution):  # side used twice
        surface.from_gluing_data(2, [(0, 0, 1, 0, False), (0, 0, 1, 1, False)])
    with pytest.raises(IncompleteGluing):
        surface.from_gluing_data(2, [(0, 0, 1, 0, False), (0, 1, 1, 1, False)])
    with pytest.raises(InconsistentFlip):  # same pair, contradictory flips
        surface.from_gluing_data(2, [(0, 0, 1, 0, False), (1, 0, 0, 0, True)])
    with pytest.raises(NotAnInvolution):  # same pair listed twice
        surface.from_gluing_data(2, [(0, 0, 1, 0, False), (1, 0, 0, 0, False)])
    with pytest.raises(IndexOutOfRange):
        surface.from_gluing_data(1, [(0, 0, 1, 0, False)])


@pytest.mark.parametrize("genus", range(6))
def test_orientable_fans(genus):
    tri = surface.orientable_genus_surface(genus)
    assert tri.euler_characteristic == 2 - 2 * genus
    assert tri.is_orientable
    assert tri.edge_count * 2 == 3 * tri.face_count


@pytest.mark.parametrize("crosscaps", range(1, 7))
def test_nonorientable_fans(crosscaps):
    tri = surface.nonorientable_surface(crosscaps)
    assert tri.euler_characteristic == 2 - crosscaps
    assert not tri.is_orientable
    assert tri.edge_count * 2 == 3 * tri.face_count


def test_fan_counts_match_hand_derivation():
    sphere = surface.orientable_genus_surface(0)
    assert (sphere.face_count, sphere.edge_count, sphere.vertex_count) == (2, 3, 3)
    torus = surface.orientable_genus_surface(1)
    assert (torus.face_count, torus.edge_count, torus.vertex_count) == (4, 6, 2)
    rp2 = surface.nonorientable_surface(1)
    assert (rp2.face_count, rp2.edge_count, rp2.vertex_count) == (2, 3, 2)


def test_invalid_crosscaps():
    with pytest.raises(InvalidCrosscaps):
        surface.nonorientable_surface(0)


def test_orientation_assignment_agrees_everywhere(fans):
    for name, tri in fans.items():
        assignment = tri.orientation
        if name in ("rp2", "klein", "crosscap3"):
            assert assignment is None
        else:
            assert assignment is not None
            assert all(tri.edge_agrees(a, assignment) for a, _, _ in tri.edges)


def test_orientability_with_flips_from_reflection(tetrahedron):
    # reflecting one triangle keeps the surface orientable but forces
    # flip=True bits into the data
    reflected = surface._reflect(tetrahedron, 2)
    assert any(reflected.flip)
    assert reflected.is_orientable
    signs = reflected.orientation
    assert signs[2] == -signs[0]


def test_pachner_13(tetrahedron):
    sub = surface.pachner_13(tetrahedron, 0)
    assert (sub.face_count, sub.edge_count, sub.vertex_count) == (6, 9, 5)
    assert sub.euler_characteristic == 2
    assert sub.is_orientable
    torus = surface.orientable_genus_surface(1)
    assert surface.pachner_13(torus, 2).euler_characteristic == 0
    twice = surface.pachner_13(sub, 4)
    assert twice.euler_characteristic == 2
    with pytest.raises(IndexOutOfRange):
        surface.pachner_13(tetrahedron, 4)


def test_pachner_22(tetrahedron, fans):
    for a, b, _ in tetrahedron.edges:
        flipped = surface.pachner_22(tetrahedron, surface.Side(a // 3, a % 3))
        assert flipped.face_count == 4
        assert flipped.euler_characteristic == 2
        assert flipped.is_orientable
    klein = fans["klein"]
    spoke = surface.pachner_22(klein, surface.Side(0, 2))
    assert spoke.euler_characteristic == 0 and not spoke.is_orientable
    # a flip=True edge exercises the reflection path
    crosscap_edge = surface.pachner_22(fans["rp2"], surface.Side(0, 1))
    assert crosscap_edge.euler_characteristic == 1
    assert not crosscap_edge.is_orientable
    folded = surface.from_gluing_data(2, FOLDED_SPHERE)
    assert folded.euler_characteristic == 2
    with pytest.raises(SelfGluedEdge):
        surface.pachner_22(folded, surface.Side(0, 0))


def test_pachner_31_inverts_13(tetrahedron):
    sub = surface.pachner_13(tetrahedron, 1)
    # the new vertex is the orbit of corner (face, 0)
    merged = surface.pachner_31(sub, (1, 0))
    assert merged.face_count == tetrahedron.face_count
    assert merged.euler_characteristic == 2
    assert merged.is_orientable


def test_pachner_31_tetra_vertex(tetrahedron):
    orbit = tetrahedron.vertex_orbits[0]
    assert len(orbit) == 3
    merged = surface.pachner_31(tetrahedron, orbit[0])
    assert merged.face_count == 2
    assert merged.euler_characteristic == 2
    assert merged.is_orientable


def test_pachner_31_bad_valence():
    torus = surface.orientable_genus_surface(1)
    # the fan center has valence 4g = 4
    with pytest.raises(BadValence):
        surface.pachner_31(torus, (0, 0))


def test_pachner_31_after_reflection(tetrahedron):
    # flip bits on the spokes must be normalized away
    sub = surface._reflect(surface.pachner_13(tetrahedron, 0), 4)
    corner = next(c for orb in sub.vertex_orbits if len(orb) == 3
                  and len({t for t, _ in orb}) == 3 for c in orb[:1])
    merged = surface.pachner_31(sub, corner)
    assert merged.euler_characteristic == 2
    assert merged.is_orientable


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10 ** 9))
def test_walk_preserves_topology(seed):
    torus = surface.orientable_genus_surface(1)
    rp2 = surface.nonorientable_surface(1)
    for tri, chi, orientable in ((torus, 0, True), (rp2, 1, False)):
        walked = surface.random_pachner_walk(tri, 12, seed)
        assert walked.euler_characteristic == chi
        assert walked.is_orientable == orientable
        assert walked.edge_count * 2 == 3 * walked.face_count


def test_walk_deterministic_and_lazy(fans):
    torus = fans["torus"]
    assert surface.random_pachner_walk(torus, 0, 5) == torus
    a = surface.random_pachner_walk(torus, 25, 1)
    b = surface.random_pachner_walk(torus, 25, 1)
    assert a == b
    states = list(surface.iter_pachner_walk(torus, 25, 1))
    assert states[-1] == a


def test_serialize_roundtrip(tetrahedron, fans):
    for tri in [tetrahedron, *fans.values()]:
        text = tri.serialize()
        assert surface.parse(text) == tri
        assert tri.serialize() == text
    walked = surface.random_pachner_walk(fans["klein"], 12, 3)
    assert surface.parse(walked.serialize()) == walked


def test_serialize_format(tetrahedron):
    lines = tetrahedron.serialize().splitlines()
    assert lines[0] == "tri-v1 4"
    assert len(lines) == 1 + 6
    flats = [(int(l.split()[0]) * 3 + int(l.split()[1])) for l in lines[1:]]
    assert flats == sorted(flats)


def test_parse_errors():
    with pytest.raises(ParseError) as err:
        surface.parse("bogus 4\n")
    assert err.value.line == 1
    with pytest.raises(ParseError) as err:
        surface.parse("tri-v1 2\n0 0 1 0 2\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        surface.parse("tri-v1 2\n0 0 1 0\n")
    with pytest.raises(ParseError):
        surface.parse("tri-v1 2\n0 x 1 0 0\n")
    with pytest.raises(ParseError):
        surface.parse("# just a comment\n")
    # comments and blank lines are fine
    text = "# header comment\ntri-v1 4 # trailing\n\n" + "\n".join(
        f"{a} {b} {c} {d} {int(e)}" for a, b, c, d, e in TETRA_GLUINGS) + "\n"
    assert surface.parse(text).face_count == 4


def test_gluing_is_fixed_point_free_involution(fans):
    for tri in fans.values():
        for i, p in enumerate(tri.partner):
            assert p != i
            assert tri.partner[p] == i
            assert tri.flip[p] == tri.flip[i]
