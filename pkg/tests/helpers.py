"""Shared catalog of test categories, built once per session."""

from functools import cache

from highergauss.constructors import LieDatum, MetricGroup, abelian_double, cyclic_metric, kac_peterson, pointed
from highergauss.cyclo import RootOfUnity
from highergauss.fixtures import ds3
from highergauss.moddata import deligne_product


@cache
def zp(p, a=1):
    return pointed(cyclic_metric(p, a), name=f"C(Z{p},q{a})")


@cache
def sl2(k):
    return kac_peterson(LieDatum("A1", k))


@cache
def lie(t, k):
    return kac_peterson(LieDatum(t, k))


@cache
def svec():
    return pointed(MetricGroup((2,), (RootOfUnity(2, 1),)), name="sVec")


@cache
def rep_z2():
    return pointed(MetricGroup((2,), (RootOfUnity(1, 0),)), name="Rep(Z2)")


@cache
def z2_i():
    return pointed(MetricGroup((2,), (RootOfUnity(4, 1),)), name="C(Z2,i)")


@cache
def z4_z8():
    return pointed(MetricGroup((4,), (RootOfUnity(8, 1),)), name="C(Z4,z8)")


@cache
def small_products():
    return (
        deligne_product(sl2(1), sl2(2)),
        deligne_product(zp(5), sl2(3)),
        deligne_product(zp(3), zp(3, 2)),
    )


def modular_catalog():
    """Every modular datum the theorem suites run over."""
    return [zp(5), zp(7), *(sl2(k) for k in range(1, 11)), lie("B2", 4), *small_products()]


def premodular_catalog():
    """Modular data plus degenerate entries."""
    return modular_catalog() + [svec(), rep_z2(), ds3(), abelian_double([2]), abelian_double([3]), zp(3), z2_i()]
