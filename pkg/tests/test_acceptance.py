"""Acceptance criteria 1-13, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) or under pytest, where the
lines are printed in the terminal summary.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import lie, modular_catalog, premodular_catalog, sl2, z2_i, zp  # noqa: E402
from highergauss.constructors import (  # noqa: E402
    MetricGroup,
    builtin_group,
    cyclic_metric,
    double_gauss_sum,
    hyperbolic,
    legendre,
    pointed,
)
from highergauss.cyclo import IntPolynomial, RootOfUnity, is_algebraic_integer, minimal_polynomial, zeta, zero  # noqa: E402
from highergauss.fixtures import ds3, h27, ty_table  # noqa: E402
from highergauss.invariants import (  # noqa: E402
    NonRootExact,
    Undefined,
    anomaly_report,
    coprime_range,
    gauss_report,
    tau,
    verify_anomaly_galois,
    verify_center,
    verify_condensation,
    verify_first_second,
    verify_galois_theorem,
    verify_nu,
    xi,
)
from highergauss.moddata import deligne_product, is_modular, t_order, verlinde_fusion  # noqa: E402
from highergauss.witt import DeligneProduct, signature, witt_obstruction  # noqa: E402

RESULTS: dict[int, str] = {}


def c1():
    bad = 0
    for p in (3, 5, 7, 11, 13):
        g = sum((zeta(p, j * j) for j in range(p)), zero(p))
        if g * g != legendre(-1, p) * p:
            return False, f"G^2 wrong for p={p}"
        for a in range(1, p):
            data = pointed(cyclic_metric(p, a))
            bad += sum(tau(data, n) != legendre(a * n, p) * g for n in range(1, p))
    return bad == 0, f"{bad} mismatches over p in 3..13"


def c2():
    rep = gauss_report(z2_i(), 2)
    return rep.tau.is_zero() and isinstance(rep.xi, Undefined), f"tau_2 = {rep.tau}, xi_2 {rep.xi}"


def c3():
    s3 = builtin_group("S3")
    ok = all(tau(ds3(), n) == 6 * sum(s3.power(x, n) == s3.identity for x in range(6)) for n in range(1, 13))
    rows = ty_table()["rows"]
    want = {"D8": [8, 48, 8, 64, 8, 48, 8, 64], "Q8": [8, 16, 8, 64, 8, 16, 8, 64]}
    for name, row in want.items():
        got = [double_gauss_sum(builtin_group(name), n) for n in range(1, 9)]
        ok = ok and got == row and rows[name] == row
    return ok, "D(S3) n=1..12, D8 and Q8 n=1..8"


def c4():
    count = 0
    for d in modular_catalog():
        for n in coprime_range(t_order(d)):
            for a in (1, 2, 3):
                v = verify_galois_theorem(d, a, n)
                count += 1
                if not v.passed:
                    return False, f"{v.subject}: {[c.label for c in v.failures()]}"
    return True, f"{count} (datum, a, n) triples"


def c5():
    count = 0
    for d in modular_catalog():
        N = t_order(d)
        for n in coprime_range(N):
            v = verify_anomaly_galois(d, n)
            count += 1
            if not v.passed:
                return False, v.subject
    return True, f"{count} (datum, n) pairs"


def c6():
    subjects = [zp(3), zp(5), *(sl2(k) for k in range(1, 5))]
    for d in subjects:
        v = verify_center(d)
        if not v.passed:
            return False, v.subject
    return True, ", ".join(d.name for d in subjects)


def c7():
    ok = verify_condensation(hyperbolic(2), [(1, 0)]).passed and verify_condensation(hyperbolic(4), [(2, 0)]).passed
    return ok, "Z2xZ2 with H=<(1,0)>, Z4xZ4 with H=<(2,0)>"


def c8():
    d = lie("B2", 4)
    ok = d.rank == 15 and t_order(d) == 28
    pattern = {4: (5, 13, 19, 27), 6: (3, 17), 8: (11, 25), 10: (1, 9, 15, 23)}
    for e, ms in pattern.items():
        ok = ok and all(xi(d, m) == RootOfUnity(14, e) for m in ms)
    return ok, f"rank {d.rank}, ord(T) {t_order(d)}"


def c9():
    c8_, c11 = lie("G2", 8), lie("G2", 11)
    A, B = DeligneProduct.of(c8_, 5), DeligneProduct.of(c11, 10)
    target = RootOfUnity(6, 5)
    v = witt_obstruction(A, B)
    ok = (t_order(c8_), t_order(c11)) == (36, 45) and A.xi(1) == target == B.xi(1)
    ok = ok and v.kind == "Distinguished" and v.n == 13 and (v.xi_a, v.xi_b) == (RootOfUnity(1, 0), RootOfUnity(2, 1))
    return ok, f"{v.kind} at n={v.n}: {v.xi_a} vs {v.xi_b}"


def c10():
    C = pointed(MetricGroup((4,), (RootOfUnity(8, 1),)))
    D = deligne_product(C, pointed(MetricGroup((2,), (RootOfUnity(4, -1),))))
    sc, sd = signature(C), signature(D)
    pairs = {(DeligneProduct([(C, a), (D, b)]).xi(1), DeligneProduct([(C, a), (D, b)]).xi(3))
             for a in range(8) for b in range(2)}
    ok = (sc[1], sc[3]) == (RootOfUnity(8, 1), RootOfUnity(8, 3))
    ok = ok and (sd[1], sd[3]) == (RootOfUnity(1, 0), RootOfUnity(2, 1)) and len(pairs) == 16
    return ok, f"{len(pairs)} distinct (xi_1, xi_3)"


def c11():
    rep = gauss_report(lie("G2", 3), 3)
    p = minimal_polynomial(rep.alpha)
    ok = isinstance(rep.xi, NonRootExact) and p == IntPolynomial.from_high(2, -3, 2) and not p.is_monic()
    ok = ok and p.substitute_square() == IntPolynomial.from_high(2, 0, -3, 0, 2)
    return ok, f"alpha_3 min-poly {p}"


def c12():
    n, t, tm = h27()
    rep = anomaly_report(n, t, tm)
    p = minimal_polynomial(rep.alpha)
    ok = t == 81 * (5 + 4 * zeta(3, 2)) and p == IntPolynomial.from_high(7, 2, 7) and not is_algebraic_integer(rep.alpha)
    return ok, f"alpha_3 min-poly {p}"


def c13():
    for d in premodular_catalog():
        if any(tau(d, n).conj() != tau(d, -n) for n in range(-6, 13)):
            return False, f"conjugation fails on {d.name}"
        if not verify_first_second(d).passed:
            return False, f"tau_1 tau_-2 not real on {d.name}"
    for a, b in [(zp(3), sl2(2)), (sl2(1), sl2(3)), (ds3(), zp(5))]:
        ab = deligne_product(a, b)
        if any(tau(ab, n) != tau(a, n) * tau(b, n) for n in range(1, 13)):
            return False, f"multiplicativity fails on {ab.name}"
    modular = [d for d in premodular_catalog() if is_modular(d)]
    for d in modular:
        if verlinde_fusion(d).axiom_failures():
            return False, f"fusion axioms fail on {d.name}"
        if not all(verify_nu(d, n).passed for n in range(1, 5)):
            return False, f"Bantay aggregate fails on {d.name}"
    return True, f"{len(premodular_catalog())} premodular entries, {len(modular)} modular"


CRITERIA = [
    (1, "pointed prime Gauss sums", c1, 1.0),
    (2, "zero Gauss sum", c2, 1.0),
    (3, "doubles by counting", c3, 1.0),
    (4, "Galois theorem suite", c4, 300.0),
    (5, "root-of-unity and d-number corollary", c5, None),
    (6, "center theorem", c6, None),
    (7, "condensation", c7, None),
    (8, "Kac-Peterson so5 level 4 anchors", c8, 60.0),
    (9, "g2 Witt separation", c9, 120.0),
    (10, "W_pt(2) generators", c10, None),
    (11, "non-root anomaly for g2 level 3", c11, None),
    (12, "H27 fixture", c12, 1.0),
    (13, "property suites", c13, 300.0),
]


def evaluate(number, title, fn, budget):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported with its type
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    timing = f"{elapsed:.2f}s" + (f" (budget {budget:g}s)" if budget else "")
    if budget is not None and elapsed > budget:
        ok = False
        detail += "; over time budget"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} -- {detail} [{timing}]"
    RESULTS[number] = line
    return ok, line


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    ok, line = evaluate(number, title, fn, budget)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        ok, line = evaluate(*crit)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
