import pytest
from hypothesis import given, settings, strategies as st

from helpers import lie, modular_catalog, premodular_catalog, rep_z2, sl2, svec, z2_i, z4_z8, zp
from highergauss.constructors import abelian_double, builtin_group, cyclic_metric, double_gauss_sum, hyperbolic, pointed
from highergauss.cyclo import IntPolynomial, NotCoprime, RootOfUnity, is_algebraic_integer, minimal_polynomial, zeta
from highergauss.fixtures import ds3, h27
from highergauss.invariants import (
    CentralChargeNotRoot,
    ExactRoot,
    GaussSumZero,
    NonRootExact,
    Undefined,
    anomaly_report,
    coprime_range,
    gauss_report,
    lens_rt,
    nu_aggregate,
    nu_bantay,
    tau,
    verify_anomaly_galois,
    verify_center,
    verify_condensation,
    verify_first_second,
    verify_galois_theorem,
    verify_nu,
    xi,
)
from highergauss.moddata import deligne_product, global_dim, t_order


def test_tau_examples():
    assert tau(svec(), 1) == 0
    assert tau(zp(3), 1) == 1 + 2 * zeta(3)
    for n in range(-3, 6):
        assert tau(rep_z2(), n) == 2


def test_gauss_report_examples():
    assert gauss_report(z4_z8(), 1).xi == ExactRoot(RootOfUnity(8, 1))
    r = gauss_report(z2_i(), 2)
    assert isinstance(r.xi, Undefined) and r.alpha is None
    with pytest.raises(GaussSumZero):
        xi(z2_i(), 2)


def test_g2_level3_non_root():
    r = gauss_report(lie("G2", 3), 3)
    assert isinstance(r.xi, NonRootExact)
    p = minimal_polynomial(r.alpha)
    assert p == IntPolynomial.from_high(2, -3, 2)
    assert p.substitute_square() == IntPolynomial.from_high(2, 0, -3, 0, 2)
    assert r.xi.alpha_minpoly == p
    with pytest.raises(CentralChargeNotRoot):
        xi(lie("G2", 3), 3)


def test_h27_fixture():
    n, t, tm = h27()
    assert n == 3
    assert t == 81 * (5 + 4 * zeta(3, 2))
    rep = anomaly_report(n, t, tm)
    assert minimal_polynomial(rep.alpha) == IntPolynomial.from_high(7, 2, 7)
    assert not is_algebraic_integer(rep.alpha)


def test_nu_aggregate():
    for d in (zp(5), sl2(3), ds3()):
        assert nu_aggregate(d, 0) == global_dim(d)
    for p in (3, 5, 7):
        for n in range(1, 2 * p):
            if n % p:
                assert nu_aggregate(pointed(cyclic_metric(p, 2)), n) == 1
    assert nu_aggregate(abelian_double([2]), 2) == 4


def test_nu_bantay_unit():
    for d in (zp(5), sl2(4), ds3()):
        assert nu_bantay(d, 0, 1) == 1
        assert all(nu_bantay(d, x, 1) == (1 if x == 0 else 0) for x in range(d.rank))


def test_nu_bantay_sl2_frobenius_schur():
    # the level-1 doublet is pseudoreal
    d = sl2(1)
    assert nu_bantay(d, 1, 2) == -1
    assert nu_bantay(sl2(2), 2, 2) == 1


def test_verify_nu_on_catalog():
    for d in (zp(5), sl2(2), sl2(3), ds3(), lie("B2", 1)):
        for n in range(1, 7):
            assert verify_nu(d, n).passed


def test_lens_ratio():
    for d in (zp(3), sl2(3)):
        a1 = gauss_report(d, 1).alpha
        for n in coprime_range(t_order(d)):
            v = lens_rt(d, n)
            assert v.rt / v.rt_reversed == gauss_report(d, n).alpha / a1
            assert v.rt_reversed == v.rt.conj()


def test_verify_galois_examples():
    v = verify_galois_theorem(zp(5), 1, 2)
    assert v.passed
    for n in coprime_range(t_order(sl2(3))):
        for a in (1, 2, 3):
            assert verify_galois_theorem(sl2(3), a, n).passed
    d3 = abelian_double([3])
    assert verify_galois_theorem(d3, 1, 2).passed
    assert xi(d3, 2) == RootOfUnity(1, 0)


def test_verify_anomaly_examples():
    v = verify_anomaly_galois(zp(7), 3)
    assert v.passed
    assert xi(zp(7), 3) ** 28 == RootOfUnity(1, 0)
    with pytest.raises(NotCoprime):
        verify_anomaly_galois(lie("G2", 3), 3)


def test_verify_center():
    for d in (zp(3), zp(5), sl2(1), sl2(2)):
        assert verify_center(d).passed


def test_verify_condensation():
    assert verify_condensation(hyperbolic(2), [(1, 0)]).passed
    assert verify_condensation(hyperbolic(4), [(2, 0)]).passed
    assert verify_condensation(hyperbolic(2), []).passed


def test_verify_first_second():
    for d in premodular_catalog():
        assert verify_first_second(d).passed, d.name
    assert tau(svec(), 1) * tau(svec(), -2) == 0


def test_report_json_shape():
    obj = gauss_report(zp(5), 2).to_json()
    assert obj["n"] == 2
    assert obj["xi"]["kind"] == "ExactRoot"


@pytest.mark.parametrize("d", premodular_catalog(), ids=lambda d: d.name)
def test_conjugation_symmetry(d):
    for n in range(-4, 9):
        assert tau(d, n).conj() == tau(d, -n)


def test_tau_multiplicative():
    pairs = [(zp(3), sl2(2)), (sl2(1), sl2(3)), (ds3(), zp(5))]
    for a, b in pairs:
        ab = deligne_product(a, b)
        for n in range(1, 13):
            assert tau(ab, n) == tau(a, n) * tau(b, n)


def test_ds3_matches_counting():
    g = builtin_group("S3")
    for n in range(1, 13):
        assert tau(ds3(), n) == double_gauss_sum(g, n)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(len(modular_catalog()))), st.integers(1, 200))
def test_xi_order_bound(i, n):
    d = modular_catalog()[i]
    N = t_order(d)
    if n % N == 0 or any(n % p == 0 for p in range(2, N + 1) if N % p == 0):
        return
    assert xi(d, n) ** (4 * N) == RootOfUnity(1, 0)
