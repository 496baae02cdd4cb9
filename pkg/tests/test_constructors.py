from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import sl2, svec, z2_i, zp
from highergauss.constructors import (
    FiniteGroup,
    IllFormedQuadraticForm,
    InvalidGroup,
    LieDatum,
    MetricGroup,
    NotIsotropic,
    UnsupportedType,
    abelian_double,
    builtin_group,
    condense_pointed,
    cyclic_metric,
    double_gauss_sum,
    hyperbolic,
    jacobi,
    kac_peterson,
    legendre,
    parse_root,
    pointed,
    smith_normal_form,
    subgroup_closure,
)
from highergauss.cyclo import RootOfUnity, embed, zeta, zero
from highergauss.invariants import tau, xi
from highergauss.moddata import global_dim, is_modular, t_order, validate, verlinde_fusion


def test_legendre_jacobi():
    assert legendre(2, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(21, 7) == 0
    assert jacobi(2, 15) == 1
    assert jacobi(7, 15) == -1
    with pytest.raises(ValueError):
        legendre(3, 9)


def test_parse_root():
    assert parse_root("zeta5^2") == RootOfUnity(5, 2)
    assert parse_root("z8") == RootOfUnity(8, 1)
    assert parse_root("zeta4^-1") == RootOfUnity(4, 3)
    assert parse_root("i") == RootOfUnity(4, 1)
    assert parse_root("-1") == RootOfUnity(2, 1)
    assert parse_root("1") == RootOfUnity(1, 0)
    with pytest.raises(ValueError):
        parse_root("banana")


def test_metric_group_rejects_bad_forms():
    with pytest.raises(IllFormedQuadraticForm):
        MetricGroup((2,), (RootOfUnity(3, 1),))
    # q(1) = zeta_8 is fine on Z_4, but not on Z_2
    MetricGroup((4,), (RootOfUnity(8, 1),))
    with pytest.raises(IllFormedQuadraticForm):
        MetricGroup((2,), (RootOfUnity(8, 1),))


def test_pointed_basics():
    assert tau(svec(), 1) == 0
    assert tau(z2_i(), 2) == 0
    d = zp(5)
    assert d.rank == 5 and validate(d) == [] and is_modular(d)


def test_pointed_prime_formula():
    for p in (3, 5, 7):
        g = sum((zeta(p, j * j) for j in range(p)), zero(p))
        for a in range(1, p):
            for n in range(1, p):
                assert tau(pointed(cyclic_metric(p, a)), n) == legendre(a * n, p) * g


def test_pointed_fusion_is_group_law():
    d = pointed(hyperbolic(3))
    f = verlinde_fusion(d)
    mg = hyperbolic(3)
    el = mg.elements()
    for i, x in enumerate(el):
        for j, y in enumerate(el):
            assert f.product(i, j) == {el.index(mg.add(x, y)): 1}


def test_abelian_double_z2():
    d = abelian_double([2])
    assert d.rank == 4
    assert sorted(str(t) for t in d.twists) == sorted(["1", "1", "1", str(RootOfUnity(2, 1))])
    for n in range(1, 9):
        assert tau(d, n) == 2 * (1 if n % 2 else 2)


def test_double_gauss_sum():
    assert double_gauss_sum(builtin_group("D8"), 2) == 48
    assert double_gauss_sum(builtin_group("Q8"), 2) == 16
    for name in ("S3", "D8", "Q8", "Z6"):
        g = builtin_group(name)
        assert double_gauss_sum(g, 1) == g.order


def test_group_validation():
    with pytest.raises(InvalidGroup):
        FiniteGroup(2, [[0, 1], [1, 1]], 0)
    g = FiniteGroup.from_permutations([[(1, 2)], [(1, 2, 3)]], name="S3")
    assert g.order == 6
    assert double_gauss_sum(g, 2) == 6 * 4


def test_kac_peterson_sl2_level1():
    d = kac_peterson(LieDatum("A1", 1))
    assert d.rank == 2
    assert d.dims == [1, 1]
    assert d.twists == [RootOfUnity(1, 0), RootOfUnity(4, 1)]
    assert tau(d, 1) == 1 + zeta(4)
    assert xi(d, 1) == RootOfUnity(8, 1)


def test_kac_peterson_sl2_dims_are_quantum_integers():
    for k in range(1, 7):
        d = sl2(k)
        q = RootOfUnity(2 * (k + 2), 1).to_cyclo()
        for j, dim in enumerate(d.dims):
            qn = (q ** (j + 1) - q ** -(j + 1)) / (q - q ** -1)
            assert dim == qn


def test_kac_peterson_small_cases():
    g2 = kac_peterson(LieDatum("G2", 1))
    assert g2.rank == 2
    assert g2.twists[1] == RootOfUnity(5, 2)
    phi = 1 + zeta(5) + zeta(5, 4)
    assert g2.dims[1] == phi
    a2 = kac_peterson(LieDatum("A2", 1))
    assert a2.rank == 3 and set(a2.twists[1:]) == {RootOfUnity(3, 1)}
    b2 = kac_peterson(LieDatum("B2", 1))
    assert b2.rank == 3
    assert global_dim(b2) == 4
    assert sorted(t.turns for t in b2.twists) == [0, Fraction(5, 16), Fraction(1, 2)]


def test_kac_peterson_b2_level4():
    from helpers import lie

    d = lie("B2", 4)
    assert d.rank == 15 and t_order(d) == 28


def test_kac_peterson_unsupported():
    with pytest.raises(UnsupportedType):
        kac_peterson(LieDatum("E8", 1))
    with pytest.raises(ValueError):
        kac_peterson(LieDatum("A1", 0))


def test_smith_normal_form():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    U, D, V = smith_normal_form(A)

    def mm(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]

    assert mm(mm(U, A), V) == D
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


def test_condense_hyperbolic_z2():
    mg = hyperbolic(2)
    c0 = condense_pointed(mg, [(1, 0)])
    assert c0.order == 1
    C, C0 = pointed(mg), pointed(c0)
    for n in (1, 3, 5):
        assert tau(C, n) == 2 and tau(C, n) == 2 * tau(C0, n)


def test_condense_trivial_subgroup():
    mg = hyperbolic(2)
    c0 = condense_pointed(mg, [])
    assert c0.order == 4
    assert tau(pointed(c0), 1) == tau(pointed(mg), 1)


def test_condense_rejects_non_isotropic():
    with pytest.raises(NotIsotropic):
        condense_pointed(hyperbolic(2), [(1, 1)])


def test_condense_z4():
    mg = hyperbolic(4)
    H = [(2, 0)]
    assert len(subgroup_closure(mg, H)) == 2
    c0 = condense_pointed(mg, H)
    assert c0.order == 4
    for n in (1, 3, 5, 7):
        assert tau(pointed(mg), n) == 2 * tau(pointed(c0), n)


def test_metric_json_round_trip():
    mg = MetricGroup((4, 2), (RootOfUnity(8, 1), RootOfUnity(4, 3)), {(0, 1): RootOfUnity(2, 1)})
    assert MetricGroup.from_json(mg.to_json()).to_json() == mg.to_json()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 12))
def test_pointed_gauss_sum_has_modulus_sqrt_p(p, a):
    if a % p == 0:
        return
    g = tau(pointed(cyclic_metric(p, a)), 1)
    assert g * g.conj() == p
    assert abs(abs(complex(embed(g, 64).mid)) ** 2 - p) < 1e-9
