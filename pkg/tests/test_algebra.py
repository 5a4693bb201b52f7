import random
from fractions import Fraction

import pytest

from latticetqft import algebra, grouptheory
from latticetqft.errors import (
    BadSpec,
    DimensionMismatch,
    NotSemisimple,
    StarMismatch,
    UnsupportedStar,
)

F = Fraction


def catalog_algebras():
    return {
        "group:C2": algebra.group_algebra(grouptheory.catalog("C2")),
        "group:S3": algebra.group_algebra(grouptheory.catalog("S3")),
        "group:Q8": algebra.group_algebra(grouptheory.catalog("Q8")),
        "matrix:2:transpose": algebra.matrix_algebra(2, "transpose"),
        "matrix:3:transpose": algebra.matrix_algebra(3, "transpose"),
        "matrix:2:anti": algebra.matrix_algebra(2, "anti"),
        "swap": algebra.swap_algebra(),
        "tensor(matrix:2:transpose,matrix:2:anti)": algebra.tensor_product(
            algebra.matrix_algebra(2, "transpose"), algebra.matrix_algebra(2, "anti")),
        "sum(swap,matrix:2:transpose)": algebra.direct_sum(
            algebra.swap_algebra(), algebra.matrix_algebra(2, "transpose")),
    }


def test_axioms_for_catalog():
    for name, a in catalog_algebras().items():
        a.check_axioms()
        if a.star is not None:
            a.check_star_axioms()


def test_unit_and_trace_of_unit():
    for a in catalog_algebras().values():
        assert a.trace_form(a.unit) == a.dim
        x = a.basis_vector(a.dim - 1)
        assert a.multiply(a.unit, x) == x


def test_z2_group_algebra():
    z2 = algebra.group_algebra(grouptheory.catalog("C2"))
    e, s = z2.basis_vector(0), z2.basis_vector(1)
    assert z2.multiply(s, s) == e
    assert z2.gram == ((F(2), F(0)), (F(0), F(2)))
    assert z2.star == ((F(1), F(0)), (F(0), F(1)))


def test_group_algebra_trace_is_order_at_identity():
    for name in ("C3", "S3", "Q8"):
        g = grouptheory.catalog(name)
        a = algebra.group_algebra(g)
        for i in range(g.order):
            expected = g.order if i == g.identity else 0
            assert a.trace_form(a.basis_vector(i)) == expected


def test_matrix_units_multiply():
    m2 = algebra.matrix_algebra(2, "transpose")
    e11, e12, e21 = (m2.basis_vector(i) for i in (0, 1, 2))
    assert m2.multiply(e12, e21) == e11
    assert m2.trace_form(e11) == 2


@pytest.mark.parametrize("n", [2, 3])
def test_matrix_gram_formula(n):
    m = algebra.matrix_algebra(n, "transpose")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    expected = n if (j == k and l == i) else 0
                    assert m.gram[i * n + j][k * n + l] == expected


def test_gram_symmetric():
    for a in catalog_algebras().values():
        g = a.gram
        assert all(g[i][j] == g[j][i] for i in range(a.dim) for j in range(a.dim))


def test_copairing_group_algebra():
    g = grouptheory.catalog("S3")
    a = algebra.group_algebra(g)
    p = a.copairing
    for i in range(g.order):
        for j in range(g.order):
            expected = F(1, g.order) if g.inverse[i] == j else F(0)
            assert p[i][j] == expected


def test_copairing_matrix_algebra():
    n = 3
    m = algebra.matrix_algebra(n, "transpose")
    p = m.copairing
    for a in range(n * n):
        for b in range(n * n):
            i, j = divmod(a, n)
            k, l = divmod(b, n)
            expected = F(1, n) if (k == j and l == i) else F(0)
            assert p[a][b] == expected


def test_copairing_inverts_gram():
    for a in catalog_algebras().values():
        p, g = a.copairing, a.gram
        for i in range(a.dim):
            for j in range(a.dim):
                s = sum(p[i][k] * g[k][j] for k in range(a.dim))
                assert s == (1 if i == j else 0)


def test_nilpotent_algebra_is_rejected():
    # basis {1, x} with x^2 = 0
    c = (((F(1), F(0)), (F(0), F(1))), ((F(0), F(1)), (F(0), F(0))))
    a = algebra.BasedAlgebra(2, c, (F(1), F(0)))
    a.check_axioms()
    with pytest.raises(NotSemisimple):
        a.copairing


def test_t3_group_algebra():
    g = grouptheory.catalog("S3")
    a = algebra.group_algebra(g)
    for i in range(g.order):
        for j in range(g.order):
            k = g.inverse[g.cayley[i][j]]
            assert a.t3(a.basis_vector(i), a.basis_vector(j), a.basis_vector(k)) == g.order
            wrong = (k + 1) % g.order
            assert a.t3(a.basis_vector(i), a.basis_vector(j), a.basis_vector(wrong)) == 0


def test_t3_matrix_patterns():
    n = 2
    m = algebra.matrix_algebra(n, "transpose")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = m.t3(m.basis_vector(i * n + j), m.basis_vector(j * n + k),
                         m.basis_vector(k * n + i))
                assert v == n


def _random_vector(rng, dim):
    return tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim))


def test_t3_cyclic_invariance():
    rng = random.Random(20240817)
    for a in catalog_algebras().values():
        for _ in range(100):
            x, y, z = (_random_vector(rng, a.dim) for _ in range(3))
            v = a.t3(x, y, z)
            assert v == a.t3(y, z, x) == a.t3(z, x, y)


def test_dimension_mismatch():
    a = algebra.swap_algebra()
    with pytest.raises(DimensionMismatch):
        a.multiply((F(1),), (F(1), F(0)))
    with pytest.raises(DimensionMismatch):
        a.trace_form((F(1), F(0), F(0)))


def test_anti_star_values():
    m = algebra.matrix_algebra(2, "anti")
    # basis order e_{++}, e_{+-}, e_{-+}, e_{--}
    epp, epm, emp, emm = (m.basis_vector(i) for i in range(4))
    assert m.star_vector(epp) == emm
    assert m.star_vector(epm) == tuple(-x for x in epm)
    assert m.star_vector(emp) == tuple(-x for x in emp)
    with pytest.raises(UnsupportedStar):
        algebra.matrix_algebra(3, "anti")


def test_swap_algebra_facts():
    s = algebra.swap_algebra()
    e1, e2 = s.basis_vector(0), s.basis_vector(1)
    assert s.multiply(e1, e1) == e1
    assert s.multiply(e1, e2) == (F(0), F(0))
    assert s.star_vector(e1) == e2
    assert s.gram == ((F(1), F(0)), (F(0), F(1)))


def test_sum_and_tensor_dimensions():
    a = algebra.matrix_algebra(2, "transpose")
    b = algebra.swap_algebra()
    assert algebra.direct_sum(a, b).dim == 6
    assert algebra.tensor_product(a, b).dim == 8
    bare = algebra.matrix_algebra(2, "none")
    with pytest.raises(StarMismatch):
        algebra.direct_sum(a, bare)
    with pytest.raises(StarMismatch):
        algebra.tensor_product(bare, b)


def test_tensor_with_anti_block_has_star():
    big = algebra.tensor_product(algebra.matrix_algebra(2, "transpose"),
                                 algebra.matrix_algebra(2, "anti"))
    assert big.dim == 16
    big.check_star_axioms()
    # nondegenerate
    assert big.copairing is not None


def test_blocks_validation():
    with pytest.raises(BadSpec):
        algebra.Block(algebra.ANTI, 3)
    with pytest.raises(BadSpec):
        algebra.Block("weird", 1)
    s = algebra.StructuredAlgebra((algebra.Block(algebra.PLAIN, 2),
                                   algebra.Block(algebra.SWAP, 1),
                                   algebra.Block(algebra.ANTI, 2)))
    assert s.dimension == 4 + 2 + 4


def test_parse_algebra_spec():
    assert algebra.parse_algebra_spec("swap").dim == 2
    assert algebra.parse_algebra_spec("matrix:3").star is None
    assert algebra.parse_algebra_spec("matrix:2:anti").dim == 4
    assert algebra.parse_algebra_spec("group:S3").dim == 6
    assert algebra.parse_algebra_spec("sum(swap,matrix:2:transpose)").dim == 6
    assert algebra.parse_algebra_spec(
        "tensor(matrix:2:transpose,matrix:2:anti)").dim == 16
    for bad in ("", "matrix:x", "matrix:2:weird", "sum(swap)", "prod(C2,C2)"):
        with pytest.raises(BadSpec):
            algebra.parse_algebra_spec(bad)
