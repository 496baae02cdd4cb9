from dataclasses import replace

import pytest

from helpers import lie, sl2, svec, z4_z8, zp
from highergauss.constructors import MetricGroup, abelian_double, pointed
from highergauss.cyclo import RootOfUnity
from highergauss.invariants import xi
from highergauss.moddata import NotModular, deligne_product, reverse
from highergauss.witt import (
    DeligneProduct,
    NotPseudounitary,
    power_law_check,
    signature,
    witt_obstruction,
)


def d_generator():
    return deligne_product(z4_z8(), pointed(MetricGroup((2,), (RootOfUnity(4, -1),))))


def test_signature_examples():
    s = signature(z4_z8())
    assert (s[1], s[3]) == (RootOfUnity(8, 1), RootOfUnity(8, 3))
    s = signature(d_generator())
    assert (s[1], s[3]) == (RootOfUnity(1, 0), RootOfUnity(2, 1))
    for orders in ([2], [3], [2, 2]):
        assert set(signature(abelian_double(orders)).entries.values()) == {RootOfUnity(1, 0)}


def test_signature_json():
    obj = signature(z4_z8()).to_json()
    assert obj["1"] == {"M": 8, "e": 1}
    assert list(obj) == ["1", "3", "5", "7"]


def test_witt_self_inconclusive():
    v = witt_obstruction(sl2(3), sl2(3))
    assert v.kind == "Inconclusive" and v.n is None


def test_witt_legendre_sign():
    v = witt_obstruction(zp(3, 1), zp(3, 2))
    assert v.kind == "Distinguished" and v.n == 1
    assert v.xi_a == v.xi_b.inverse()


def test_witt_center_is_trivial_class():
    z = deligne_product(sl2(2), reverse(sl2(2)))
    vec_like = abelian_double([2])
    assert witt_obstruction(z, vec_like).kind == "Inconclusive"


def test_witt_requires_pseudounitary():
    odd = replace(sl2(2), pseudounitary=False)
    with pytest.raises(NotPseudounitary):
        witt_obstruction(odd, sl2(2))


def test_witt_requires_modular():
    with pytest.raises(NotModular):
        witt_obstruction(svec(), zp(3))


def test_product_xi_is_multiplicative():
    a, b = sl2(2), zp(5)
    lit = deligne_product(a, b)
    sym = DeligneProduct([(a, 1), (b, 1)])
    for n in (1, 3, 7, 9, 11, 13):
        assert sym.xi(n) == xi(lit, n)
    assert DeligneProduct.of(zp(3), 3).materialize().rank == 27


def test_g2_witt_separation():
    A = DeligneProduct.of(lie("G2", 8), 5)
    B = DeligneProduct.of(lie("G2", 11), 10)
    target = RootOfUnity(6, 5)
    assert A.xi(1) == target and B.xi(1) == target
    v = witt_obstruction(A, B)
    assert (v.kind, v.n) == ("Distinguished", 13)
    assert (v.xi_a, v.xi_b) == (RootOfUnity(1, 0), RootOfUnity(2, 1))


def test_power_law():
    v = power_law_check(zp(3))
    assert v.t_order == 3 and v.passed
    assert v.literal_checked
    for d in (sl2(1), sl2(3), lie("B2", 1)):
        assert power_law_check(d, literal_limit=0).passed
    with pytest.raises(NotModular):
        power_law_check(svec())
