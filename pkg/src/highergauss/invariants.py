"""Higher Gauss sums, anomalies, central charges and exact theorem checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Sequence

import mpmath

from .constructors.metric import MetricGroup, condense_pointed, pointed, subgroup_closure
from .cyclo import (
    ComplexInterval,
    CycloNum,
    GaloisAut,
    IntPolynomial,
    NotCoprime,
    RootOfUnity,
    embed,
    is_algebraic_integer,
    is_d_number,
    is_root_of_unity,
    is_totally_nonnegative,
    make,
    minimal_polynomial,
    real_sign,
    to_json,
    zero,
)
from .moddata import (
    NotModular,
    PremodularData,
    deligne_product,
    galois_symmetry,
    global_dim,
    require_modular,
    reverse,
    t_order,
    verlinde_fusion,
)


class GaussSumZero(ValueError):
    pass


class CentralChargeNotRoot(ValueError):
    pass


# ---------------------------------------------------------------------------
# central-charge classification


@dataclass(frozen=True)
class ExactRoot:
    root: RootOfUnity

    def to_json(self) -> dict:
        return {"kind": "ExactRoot", "root": self.root.to_json()}

    def __str__(self) -> str:
        return str(self.root)


@dataclass(frozen=True)
class NonRootExact:
    alpha_minpoly: IntPolynomial
    interval: ComplexInterval

    def to_json(self) -> dict:
        z = complex(self.interval.mid)
        return {
            "kind": "NonRootExact",
            "alpha_minpoly": self.alpha_minpoly.to_json(),
            "xi_approx": [repr(z.real), repr(z.imag)],
            "xi_radius": mpmath.nstr(self.interval.rad, 5),
        }

    def __str__(self) -> str:
        return f"not a root (alpha: {self.alpha_minpoly})"


@dataclass(frozen=True)
class Undefined:
    reason: str = "tau_n = 0"

    def to_json(self) -> dict:
        return {"kind": "Undefined", "reason": self.reason}

    def __str__(self) -> str:
        return "undefined"


XiValue = ExactRoot | NonRootExact | Undefined


@dataclass(frozen=True)
class GaussReport:
    n: int
    tau: CycloNum
    tau_conj: CycloNum
    abs_sq: CycloNum
    alpha: CycloNum | None
    xi: XiValue

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "tau": to_json(self.tau),
            "tau_conj": to_json(self.tau_conj),
            "abs_sq": to_json(self.abs_sq),
            "alpha": None if self.alpha is None else to_json(self.alpha),
            "xi": self.xi.to_json(),
        }


# ---------------------------------------------------------------------------
# Gauss sums


def _dim_squares(data: PremodularData) -> list[CycloNum]:
    if "dsq" not in data._cache:
        data._cache["dsq"] = [d * d for d in data.lifted_dims]
    return data._cache["dsq"]


def _twisted_sum(data: PremodularData, weights: Sequence[CycloNum], turns: Sequence[Fraction]) -> CycloNum:
    """sum_X weights[X] * exp(2 pi i turns[X]), grouped by equal phase."""
    L = data.conductor
    buckets: dict[Fraction, CycloNum] = {}
    for w, t in zip(weights, turns):
        t %= 1
        buckets[t] = buckets[t] + w if t in buckets else w
    total = zero(L)
    for t, w in buckets.items():
        if t == 0:
            total = total + w
        else:
            total = total + w * make(t.denominator, {t.numerator: 1})
    return total


def tau(data: PremodularData, n: int) -> CycloNum:
    """The n-th Gauss sum: sum over simples of theta^n * dim^2."""
    return _twisted_sum(data, _dim_squares(data), [t.turns * n for t in data.twists])


def _positive_phase(value: CycloNum, alpha_root: RootOfUnity, bits: int) -> RootOfUnity:
    """The square root u of alpha with value / u real positive.

    The half-plane test on intervals picks a candidate; it is then certified
    exactly: value / u is fixed by conjugation and its interval is positive.
    """
    half = RootOfUnity.from_fraction(alpha_root.turns / 2)
    cands = (half, half * RootOfUnity(2, 1))
    target = mpmath.mpf(0)
    while True:
        iv = embed(value, bits)
        with mpmath.workprec(bits + 32):
            for u in cands:
                z = mpmath.expjpi(-2 * mpmath.mpf(u.turns.numerator) / u.turns.denominator)
                re = (iv.mid * z).real
                if re - iv.rad > target:
                    quotient = value * u.inverse().to_cyclo()
                    if quotient != quotient.conj() or real_sign(quotient, bits) <= 0:
                        raise AssertionError("central-charge certificate failed")
                    return u
        bits *= 2


def classify_xi(tau_n: CycloNum, tau_minus_n: CycloNum, bits: int = 128) -> tuple[CycloNum | None, XiValue]:
    if tau_n.is_zero():
        return None, Undefined()
    alpha = tau_n / tau_minus_n
    root = is_root_of_unity(alpha)
    if root is not None:
        return alpha, ExactRoot(_positive_phase(tau_n, root, bits))
    iv = embed(tau_n, bits)
    with mpmath.workprec(bits + 32):
        mod = abs(iv.mid)
        rad = 2 * iv.rad / (mod - iv.rad) if mod > iv.rad else mpmath.mpf(2)
        xi_iv = ComplexInterval(iv.mid / mod, rad)
    return alpha, NonRootExact(minimal_polynomial(alpha), xi_iv)


def anomaly_report(n: int, tau_n: CycloNum, tau_minus_n: CycloNum, bits: int = 128) -> GaussReport:
    """Report built from a supplied pair of Gauss sums (no category needed)."""
    alpha, xi = classify_xi(tau_n, tau_minus_n, bits)
    return GaussReport(n, tau_n, tau_minus_n, tau_n * tau_minus_n, alpha, xi)


def gauss_report(data: PremodularData, n: int, bits: int = 128) -> GaussReport:
    return anomaly_report(n, tau(data, n), tau(data, -n), bits)


def xi(data: PremodularData, n: int, bits: int = 128) -> RootOfUnity:
    """xi_n as an exact root of unity, or an exception explaining why not."""
    rep = gauss_report(data, n, bits)
    if isinstance(rep.xi, Undefined):
        raise GaussSumZero(f"tau_{n} = 0")
    if isinstance(rep.xi, NonRootExact):
        raise CentralChargeNotRoot(f"xi_{n} is not a root of unity")
    return rep.xi.root


def coprime_range(N: int, upto: int | None = None) -> list[int]:
    return [n for n in range(1, (upto or N) + 1) if gcd(n, N) == 1]


# ---------------------------------------------------------------------------
# indicators and lens spaces


def nu_aggregate(data: PremodularData, n: int) -> CycloNum:
    require_modular(data)
    nu = tau(data, n) * tau(data, -n) / global_dim(data)
    if not is_algebraic_integer(nu) or not is_totally_nonnegative(nu):
        raise AssertionError(f"nu_{n} = {nu} is not a totally nonnegative algebraic integer")
    return nu


def nu_bantay(data: PremodularData, label: int | str, n: int) -> CycloNum:
    require_modular(data)
    x = data.index(label) if isinstance(label, str) else label
    fusion = verlinde_fusion(data)
    dims = data.lifted_dims
    weights, turns = [], []
    for i in range(data.rank):
        for j in range(data.rank):
            c = fusion[i, j, x]
            if c:
                weights.append(dims[i] * dims[j] * c)
                turns.append((data.twists[i].turns - data.twists[j].turns) * n)
    return _twisted_sum(data, weights, turns) / global_dim(data)


@dataclass(frozen=True)
class LensValue:
    n: int
    rt: CycloNum
    rt_reversed: CycloNum
    sqrt_dim: CycloNum

    def to_json(self) -> dict:
        return {"n": self.n, "rt": to_json(self.rt), "rt_reversed": to_json(self.rt_reversed), "D": to_json(self.sqrt_dim)}


def lens_rt(data: PremodularData, n: int) -> LensValue:
    """Reshetikhin-Turaev values of L(n,1) and of its reverse."""
    require_modular(data)
    t1, tm1 = tau(data, 1), tau(data, -1)
    _, x1 = classify_xi(t1, tm1)
    if not isinstance(x1, ExactRoot):
        raise CentralChargeNotRoot("xi_1 is not a root of unity")
    D = t1 * x1.root.inverse().to_cyclo()
    rt = tm1 * tau(data, n) / (D * D * D)
    rt_rev = tau(data, -n) / (D * tm1)
    if rt_rev != rt.conj():
        raise AssertionError("orientation reversal is not complex conjugation")
    return LensValue(n, rt, rt_rev, D)


# ---------------------------------------------------------------------------
# verdicts


def _ser(x: Any) -> Any:
    if isinstance(x, CycloNum):
        return {"value": to_json(x), "text": str(x)}
    if isinstance(x, RootOfUnity):
        return {"root": x.to_json(), "text": str(x)}
    if isinstance(x, IntPolynomial):
        return {"poly": x.to_json(), "text": str(x)}
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


@dataclass
class Check:
    label: str
    lhs: Any
    rhs: Any
    ok: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {"check": self.label, "ok": self.ok, "lhs": _ser(self.lhs), "rhs": _ser(self.rhs)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Verdict:
    name: str
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def status(self) -> str:
        return "Pass" if self.passed else "Fail"

    def add(self, label: str, lhs: Any, rhs: Any, ok: bool | None = None, note: str = "") -> bool:
        if ok is None:
            ok = lhs == rhs
        self.checks.append(Check(label, lhs, rhs, bool(ok), note))
        return bool(ok)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "verdict": self.status,
            "theorem": self.name,
            "subject": self.subject,
            "checks": [c.to_json() for c in self.checks],
        }


def _require_coprime(n: int, N: int) -> None:
    if gcd(n, N) != 1:
        raise NotCoprime(f"gcd({n}, {N}) != 1")


def _sigma_for(n: int, N: int) -> GaloisAut:
    # sigma(zeta_N) = zeta_N^(n^-1 mod N)
    return GaloisAut(N, pow(n, -1, N) if N > 1 else 1)


def verify_galois_theorem(data: PremodularData, a: int, n: int) -> Verdict:
    require_modular(data)
    N = t_order(data)
    _require_coprime(n, N)
    sym = galois_symmetry(data, _sigma_for(n, N))
    u = data.twists[sym.perm[0]]
    D = global_dim(data)
    k = sym.sigma.k
    lhs = tau(data, a * n)
    rhs = tau(data, a).galois(k % data.conductor) * D / D.galois(k % data.conductor) * (u ** (a * n)).to_cyclo()
    v = Verdict("galois", f"{data.name} a={a} n={n}")
    v.add("tau_an = sigma(tau_a) dim/sigma(dim) theta^an", lhs, rhs)
    v.add("tau_n != 0", tau(data, n), 0, ok=not tau(data, n).is_zero())
    return v


def verify_anomaly_galois(data: PremodularData, n: int) -> Verdict:
    require_modular(data)
    N = t_order(data)
    _require_coprime(n, N)
    sym = galois_symmetry(data, _sigma_for(n, N))
    u = data.twists[sym.perm[0]]
    k = sym.sigma.k % data.conductor
    rep_n = gauss_report(data, n)
    rep_1 = gauss_report(data, 1)
    v = Verdict("anomaly", f"{data.name} n={n}")
    rhs = rep_1.alpha.galois(k) * (u ** (2 * n)).to_cyclo()
    v.add("alpha_n = sigma(alpha_1) theta^2n", rep_n.alpha, rhs)
    if isinstance(rep_n.xi, ExactRoot):
        p = rep_n.xi.root ** (4 * N)
        v.add("xi_n^(4N) = 1", p, RootOfUnity(1, 0))
    else:
        v.add("xi_n is a root of unity", str(rep_n.xi), "root", ok=False)
    v.add("tau_n is a d-number", rep_n.tau, "d-number", ok=is_d_number(rep_n.tau))
    return v


def verify_center(data: PremodularData, n_values: Sequence[int] | None = None) -> Verdict:
    require_modular(data)
    Z = deligne_product(data, reverse(data))
    NZ = t_order(Z)
    D = global_dim(data)
    v = Verdict("center", f"{data.name} * rev")
    for n in n_values or coprime_range(NZ):
        _require_coprime(n, NZ)
        sigma = _sigma_for(n, NZ)
        rep = gauss_report(Z, n)
        sym = galois_symmetry(Z, sigma)
        k = sym.sigma.k % data.conductor if data.conductor > 1 else 1
        expected = D * D / D.galois(k)
        v.add(f"xi_{n}(Z) = 1", rep.xi.root if isinstance(rep.xi, ExactRoot) else str(rep.xi), RootOfUnity(1, 0))
        v.add(f"tau_{n}(Z) = dim^2/sigma(dim)", rep.tau, expected)
        v.add(f"theta_sigma(1) = 1 (n={n})", Z.twists[sym.perm[0]], RootOfUnity(1, 0))
    return v


def verify_condensation(mg: MetricGroup, H: Sequence[Sequence[int]]) -> Verdict:
    C = pointed(mg)
    size_h = len(subgroup_closure(mg, H))
    C0 = pointed(condense_pointed(mg, H))
    N = t_order(C)
    v = Verdict("condensation", f"{mg.describe()} H={[tuple(h) for h in H]}")
    scale = Fraction(size_h, size_h * size_h)
    v.add("sigma(dim A)/dim(A)^2 = 1/|H|", scale, Fraction(1, size_h))
    v.add("dim(C0) = |G|/|H|^2", Fraction(C0.rank), Fraction(mg.order, size_h * size_h))
    for n in coprime_range(N):
        r, r0 = gauss_report(C, n), gauss_report(C0, n)
        v.add(f"|H| tau_{n}(C0) = tau_{n}(C)", r0.tau * size_h, r.tau)
        v.add(f"xi_{n}(C0) = xi_{n}(C)", str(r0.xi), str(r.xi), ok=r0.xi == r.xi)
    return v


def verify_first_second(data: PremodularData) -> Verdict:
    t1, tm2 = tau(data, 1), tau(data, -2)
    p = t1 * tm2
    v = Verdict("first-second", data.name)
    v.add("tau_1 tau_-2 is real", p, p.conj())
    if not p.is_zero():
        a1 = t1 / tau(data, -1)
        a2 = tau(data, 2) / tm2
        v.add("alpha_1 = alpha_2", a1, a2)
    return v


def verify_nu(data: PremodularData, n: int) -> Verdict:
    """Bantay indicators summed against dimensions reproduce nu_n."""
    agg = nu_aggregate(data, n)
    total = zero(data.conductor)
    for x, d in enumerate(data.lifted_dims):
        total = total + d * nu_bantay(data, x, n)
    v = Verdict("nu", f"{data.name} n={n}")
    v.add("sum_X dim(X) nu_n(X) = tau_n tau_-n / dim", total, agg)
    return v


__all__ = [
    "CentralChargeNotRoot",
    "ExactRoot",
    "GaussReport",
    "GaussSumZero",
    "LensValue",
    "NonRootExact",
    "NotModular",
    "Undefined",
    "Verdict",
    "anomaly_report",
    "classify_xi",
    "coprime_range",
    "gauss_report",
    "lens_rt",
    "nu_aggregate",
    "nu_bantay",
    "tau",
    "verify_anomaly_galois",
    "verify_center",
    "verify_condensation",
    "verify_first_second",
    "verify_galois_theorem",
    "verify_nu",
    "xi",
]
