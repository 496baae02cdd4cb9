"""Higher central charges as Witt-class invariants.

Deligne powers are handled symbolically through :class:`DeligneProduct`:
since tau_n is multiplicative under the Deligne product, so is xi_n, and a
signature of C^k is the k-th power of the signature of C.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cyclo import RootOfUnity, lcm
from .invariants import ExactRoot, classify_xi, coprime_range, xi
from .moddata import NotModular, PremodularData, deligne_product, is_modular, t_order


class NotPseudounitary(ValueError):
    pass


@dataclass
class DeligneProduct:
    """C_1^{k_1} * ... * C_m^{k_m}, kept factorised."""

    factors: list[tuple[PremodularData, int]]
    name: str = ""

    def __post_init__(self):
        if not self.name:
            self.name = "*".join(d.name if k == 1 else f"{d.name}^{k}" for d, k in self.factors)

    @classmethod
    def of(cls, data: PremodularData, power: int = 1) -> "DeligneProduct":
        return cls([(data, power)])

    def __mul__(self, other: "DeligneProduct") -> "DeligneProduct":
        return DeligneProduct(self.factors + other.factors)

    @property
    def t_order(self) -> int:
        return lcm(*(t_order(d) for d, k in self.factors if k))

    @property
    def pseudounitary(self) -> bool:
        return all(d.pseudounitary for d, _ in self.factors)

    def is_modular(self) -> bool:
        return all(d.s_matrix is not None and is_modular(d) for d, _ in self.factors)

    def xi(self, n: int) -> RootOfUnity:
        out = RootOfUnity(1, 0)
        for d, k in self.factors:
            if k:
                out = out * xi(d, n) ** k
        return out

    def materialize(self) -> PremodularData:
        out = None
        for d, k in self.factors:
            for _ in range(k):
                out = d if out is None else deligne_product(out, d)
        if out is None:
            raise ValueError("empty product")
        return out


Subject = PremodularData | DeligneProduct


def _as_product(x: Subject) -> DeligneProduct:
    return x if isinstance(x, DeligneProduct) else DeligneProduct.of(x)


def _require_modular(p: DeligneProduct) -> None:
    if not p.is_modular():
        raise NotModular(p.name)


@dataclass
class ChargeSignature:
    name: str
    t_order: int
    entries: dict[int, RootOfUnity] = field(default_factory=dict)

    def __getitem__(self, n: int) -> RootOfUnity:
        return self.entries[n % self.t_order or self.t_order]

    def to_json(self) -> dict:
        return {str(n): r.to_json() for n, r in sorted(self.entries.items())}


def signature(data: Subject) -> ChargeSignature:
    p = _as_product(data)
    _require_modular(p)
    N = p.t_order
    return ChargeSignature(p.name, N, {n: p.xi(n) for n in coprime_range(N)})


@dataclass
class WittVerdict:
    kind: str
    n: int | None
    xi_a: RootOfUnity | None
    xi_b: RootOfUnity | None
    compared: list[int]
    note: str = (
        "A mismatch proves the two categories are not Witt equivalent; "
        "agreement proves nothing."
    )

    def to_json(self) -> dict:
        return {
            "verdict": self.kind,
            "n": self.n,
            "xi_a": None if self.xi_a is None else self.xi_a.to_json(),
            "xi_b": None if self.xi_b is None else self.xi_b.to_json(),
            "compared": self.compared,
            "note": self.note,
        }


def witt_obstruction(a: Subject, b: Subject) -> WittVerdict:
    pa, pb = _as_product(a), _as_product(b)
    for p in (pa, pb):
        _require_modular(p)
        if not p.pseudounitary:
            raise NotPseudounitary(f"{p.name} is not flagged pseudounitary")
    Na, Nb = pa.t_order, pb.t_order
    compared = []
    for n in range(1, lcm(Na, Nb) + 1):
        if gcd(n, Na * Nb) != 1:
            continue
        compared.append(n)
        xa, xb = pa.xi(n), pb.xi(n)
        if xa != xb:
            return WittVerdict("Distinguished", n, xa, xb, compared)
    return WittVerdict("Inconclusive", None, None, None, compared)


@dataclass
class PowerLawVerdict:
    t_order: int
    values: dict[int, RootOfUnity]
    literal: dict[int, RootOfUnity] = field(default_factory=dict)

    @property
    def literal_checked(self) -> bool:
        return bool(self.literal)

    @property
    def passed(self) -> bool:
        one = RootOfUnity(1, 0)
        return all(v == one for v in self.values.values()) and all(
            self.literal[k] == self.values[k] for k in self.literal
        )

    def to_json(self) -> dict:
        return {
            "verdict": "Pass" if self.passed else "Fail",
            "t_order": self.t_order,
            "values": {str(k): v.to_json() for k, v in self.values.items()},
            "literal_checked": self.literal_checked,
        }


def _literal_power_xi(data: PremodularData, reps: int, ks: list[int], limit: int) -> dict[int, RootOfUnity]:
    # the simple objects of the power as a multiset of (twist, dim^2) classes;
    # tau only needs dims and twists, never the S-matrix of the power
    base = [(t, d * d) for t, d in zip(data.twists, data.lifted_dims)]
    unit = data.lifted_dims[0]
    classes: dict = {(RootOfUnity(1, 0), unit.key()): (unit, 1)}
    for _ in range(reps):
        nxt: dict = {}
        for (t, _), (dsq, mult) in classes.items():
            for t2, dsq2 in base:
                tt, dd = t * t2, dsq * dsq2
                key = (tt, dd.key())
                prev = nxt.get(key)
                nxt[key] = (dd, mult + (prev[1] if prev else 0))
        if len(nxt) > limit:
            return {}
        classes = nxt
    out = {}
    for k in ks:
        tau_k = tau_m = 0
        for (t, _), (dsq, mult) in classes.items():
            tau_k = dsq * (t ** k).to_cyclo() * mult + tau_k
            tau_m = dsq * (t ** -k).to_cyclo() * mult + tau_m
        _, value = classify_xi(tau_k, tau_m)
        if not isinstance(value, ExactRoot):
            raise AssertionError("literal power has no root-of-unity central charge")
        out[k] = value.root
    return out


def power_law_check(data: PremodularData, literal_limit: int = 2000) -> PowerLawVerdict:
    """xi_k(C^(4N)) = 1 for k coprime to N.

    The symbolic value uses multiplicativity.  The power is also summed
    literally, as a multiset of simple-object classes, unless more than
    ``literal_limit`` distinct classes appear.
    """
    if data.s_matrix is None or not is_modular(data):
        raise NotModular(data.name)
    N = t_order(data)
    reps = 4 * N
    values = {k: xi(data, k) ** reps for k in coprime_range(N)}
    literal = _literal_power_xi(data, reps, list(values), literal_limit) if literal_limit else {}
    return PowerLawVerdict(N, values, literal)
