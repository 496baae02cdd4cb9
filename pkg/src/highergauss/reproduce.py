"""Scripted comparisons of published example values against fresh computations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import fixtures
from .constructors import (
    LieDatum,
    MetricGroup,
    builtin_group,
    cyclic_metric,
    double_gauss_sum,
    kac_peterson,
    legendre,
    pointed,
)
from .cyclo import IntPolynomial, RootOfUnity, is_algebraic_integer, minimal_polynomial
from .invariants import anomaly_report, coprime_range, gauss_report, lens_rt, tau, xi
from .moddata import deligne_product, t_order
from .witt import DeligneProduct, signature, witt_obstruction


class UnknownExample(KeyError):
    pass


@dataclass
class Row:
    label: str
    expected: Any
    computed: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"check": self.label, "expected": str(self.expected), "computed": str(self.computed), "ok": self.ok}


def ty_table() -> list[Row]:
    ref = fixtures.ty_table()["rows"]
    rows = []
    for name in ("D8", "Q8"):
        g = builtin_group(name)
        rows.append(Row(f"{name} tau_1..8", ref[name], [double_gauss_sum(g, n) for n in range(1, 9)]))
    return rows


def so5_xi_table() -> list[Row]:
    data = kac_peterson(LieDatum("B2", 4))
    rows = [Row("rank", 15, data.rank), Row("ord T", 28, t_order(data))]
    pattern = {4: (5, 13, 19, 27), 6: (3, 17), 8: (11, 25), 10: (1, 9, 15, 23)}
    for power, ms in pattern.items():
        for m in ms:
            rows.append(Row(f"xi_{m}", RootOfUnity(14, power), xi(data, m)))
    return rows


def g2_witt() -> list[Row]:
    c8, c11 = kac_peterson(LieDatum("G2", 8)), kac_peterson(LieDatum("G2", 11))
    A, B = DeligneProduct.of(c8, 5), DeligneProduct.of(c11, 10)
    target = RootOfUnity(6, 5)  # exp(-pi i / 3)
    verdict = witt_obstruction(A, B)
    return [
        Row("ord T of C(g2,8)", 36, t_order(c8)),
        Row("ord T of C(g2,11)", 45, t_order(c11)),
        Row("xi_1(C(g2,8)^5)", target, A.xi(1)),
        Row("xi_1(C(g2,11)^10)", target, B.xi(1)),
        Row("first separating n", 13, verdict.n),
        Row("xi_13 values", (RootOfUnity(1, 0), RootOfUnity(2, 1)), (verdict.xi_a, verdict.xi_b)),
    ]


def wpt2_generators() -> list[Row]:
    C = pointed(MetricGroup((4,), (RootOfUnity(8, 1),)), name="C(Z4,z8)")
    D = deligne_product(C, pointed(MetricGroup((2,), (RootOfUnity(4, -1),)), name="C(Z2,-i)"))
    sc, sd = signature(C), signature(D)
    pairs = set()
    for a in range(8):
        for b in range(2):
            p = DeligneProduct([(C, a), (D, b)])
            pairs.add((p.xi(1), p.xi(3)))
    return [
        Row("(xi_1, xi_3) of C", (RootOfUnity(8, 1), RootOfUnity(8, 3)), (sc[1], sc[3])),
        Row("(xi_1, xi_3) of D", (RootOfUnity(1, 0), RootOfUnity(2, 1)), (sd[1], sd[3])),
        Row("distinct pairs on C^a D^b", 16, len(pairs)),
    ]


def h27() -> list[Row]:
    n, t, tm = fixtures.h27()
    rep = anomaly_report(n, t, tm)
    return [
        Row("alpha_3 minimal polynomial", IntPolynomial.from_high(7, 2, 7), minimal_polynomial(rep.alpha)),
        Row("alpha_3 algebraic integer", False, is_algebraic_integer(rep.alpha)),
        Row("xi_3 classification", "NonRootExact", type(rep.xi).__name__),
    ]


def zp_gauss() -> list[Row]:
    rows = []
    for p in (3, 5, 7, 11, 13):
        g = tau(pointed(cyclic_metric(p, 1)), 1)
        rows.append(Row(f"p={p}: G^2", legendre(-1, p) * p, g * g))
        bad = 0
        for a in range(1, p):
            data = pointed(cyclic_metric(p, a))
            for n in range(1, p):
                if tau(data, n) != g * legendre(a * n, p):
                    bad += 1
        rows.append(Row(f"p={p}: mismatches over a, n", 0, bad))
    return rows


def lens() -> list[Row]:
    rows = []
    for name, data in (("C(Z3,q1)", pointed(cyclic_metric(3, 1))), ("C(A1,3)", kac_peterson(LieDatum("A1", 3)))):
        a1 = gauss_report(data, 1).alpha
        for n in coprime_range(t_order(data)):
            val = lens_rt(data, n)
            an = gauss_report(data, n).alpha
            rows.append(Row(f"{name} n={n}: RT(L)/RT(-L)", an / a1, val.rt / val.rt_reversed))
    return rows


EXAMPLES: dict[str, Callable[[], list[Row]]] = {
    "ty-table": ty_table,
    "so5-xi-table": so5_xi_table,
    "g2-witt": g2_witt,
    "wpt2-generators": wpt2_generators,
    "h27": h27,
    "zp-gauss": zp_gauss,
    "lens": lens,
}


def run(example_id: str) -> list[Row]:
    if example_id not in EXAMPLES:
        raise UnknownExample(example_id)
    return EXAMPLES[example_id]()
