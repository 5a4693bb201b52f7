import pytest

from latticetqft import surface

# boundary of the 3-simplex: vertices 0..3, faces oriented outward
TETRA_GLUINGS = [
    (0, 0, 1, 2, False),
    (0, 1, 3, 2, False),
    (0, 2, 2, 0, False),
    (1, 0, 2, 2, False),
    (1, 1, 3, 0, False),
    (2, 1, 3, 1, False),
]


@pytest.fixture
def tetrahedron():
    return surface.from_gluing_data(4, TETRA_GLUINGS)


@pytest.fixture(scope="session")
def fans():
    return {
        "sphere": surface.orientable_genus_surface(0),
        "torus": surface.orientable_genus_surface(1),
        "genus2": surface.orientable_genus_surface(2),
        "rp2": surface.nonorientable_surface(1),
        "klein": surface.nonorientable_surface(2),
        "crosscap3": surface.nonorientable_surface(3),
    }
