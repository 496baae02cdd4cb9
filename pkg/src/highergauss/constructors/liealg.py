"""Kac-Peterson modular data for the rank <= 2 simple Lie algebras A1, A2, B2, G2.

Weights are kept in Dynkin-label coordinates.  The invariant form is
normalised so that long roots have squared length 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..cyclo import CycloNum, RootOfUnity, lcm
from ..moddata import NonIntegralFusion, PremodularData, is_modular, validate, verlinde_fusion


class UnsupportedType(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


# Gram matrices of simple roots, long roots of squared length 2
_GRAM = {
    "A1": ((Fraction(2),),),
    "A2": ((Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(2))),
    "B2": ((Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(1))),
    "G2": ((Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(2, 3))),
}
_SCALING = {"A1": 1, "A2": 1, "B2": 2, "G2": 3}
_DUAL_COXETER = {"A1": 2, "A2": 3, "B2": 3, "G2": 4}
_WEYL_ORDER = {"A1": 2, "A2": 6, "B2": 8, "G2": 12}


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def _det(m) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _inverse(m):
    if len(m) == 1:
        return ((1 / Fraction(m[0][0]),),)
    d = Fraction(_det(m))
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


@dataclass(frozen=True)
class LieDatum:
    type: str
    level: int

    def __post_init__(self):
        if self.type not in _GRAM:
            raise UnsupportedType(f"type {self.type!r} not in {sorted(_GRAM)}")
        if self.level < 1:
            raise ValueError("level must be at least 1")

    @property
    def rank(self) -> int:
        return len(_GRAM[self.type])

    @property
    def gram(self):
        return _GRAM[self.type]

    @property
    def scaling(self) -> int:
        return _SCALING[self.type]

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """a_ij = 2 (a_i, a_j) / (a_j, a_j); row i gives a_i in Dynkin labels."""
        g = self.gram
        return tuple(tuple(int(2 * g[i][j] / g[j][j]) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def weight_form(self):
        """Matrix of (w_i, w_j) on fundamental weights."""
        g = self.gram
        ainv = _inverse(self.cartan)
        r = self.rank
        form = tuple(tuple(ainv[j][i] * g[i][i] / 2 for j in range(r)) for i in range(r))
        assert all(form[i][j] == form[j][i] for i in range(r) for j in range(r))
        return form

    def ip(self, x, y) -> Fraction:
        f = self.weight_form
        return sum((f[i][j] * x[i] * y[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    @cached_property
    def weyl_group(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Integer matrices acting on Dynkin-label row vectors from the right."""
        r = self.rank
        A = self.cartan
        gens = []
        for i in range(r):
            # s_i(l) = l - l_i a_i
            gens.append(tuple(tuple(int(j == k) - (A[i][k] if j == i else 0) for k in range(r)) for j in range(r)))
        ident = tuple(tuple(int(j == k) for k in range(r)) for j in range(r))
        group = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    v = _matmul(w, s)
                    if v not in group:
                        group.add(v)
                        nxt.append(v)
            frontier = nxt
        out = tuple(sorted(group))
        if len(out) != _WEYL_ORDER[self.type]:
            raise InternalInconsistency(f"Weyl group of {self.type} has order {len(out)}")
        return out

    @staticmethod
    def act(w, lam) -> tuple[int, ...]:
        return tuple(sum(lam[j] * w[j][k] for j in range(len(lam))) for k in range(len(w[0])))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in Dynkin labels."""
        A = self.cartan
        ainv = _inverse(A)
        roots = {self.act(w, A[i]) for w in self.weyl_group for i in range(self.rank)}
        pos = []
        for rt in roots:
            coords = [sum(Fraction(rt[j]) * ainv[j][k] for j in range(self.rank)) for k in range(self.rank)]
            if all(c >= 0 for c in coords):
                pos.append(rt)
        return tuple(sorted(pos))

    @cached_property
    def rho(self) -> tuple[int, ...]:
        total = [0] * self.rank
        for rt in self.positive_roots:
            total = [a + b for a, b in zip(total, rt)]
        assert all(t % 2 == 0 for t in total)
        return tuple(t // 2 for t in total)

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=lambda rt: self.ip(rt, self.rho))

    @cached_property
    def dual_coxeter(self) -> int:
        h = self.ip(self.rho, self.highest_root) + 1
        if h != _DUAL_COXETER[self.type] or self.ip(self.highest_root, self.highest_root) != 2:
            raise InternalInconsistency(f"h-dual for {self.type} came out {h}")
        return int(h)

    @cached_property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        """Dominant weights at the level, the zero weight first."""
        k = self.level
        out = []
        ranges = [range(k + 1)] * self.rank
        for lam in itertools.product(*ranges):
            if self.ip(lam, self.highest_root) <= k:
                out.append(tuple(lam))
        return tuple(sorted(out, key=lambda l: (self.ip(l, self.highest_root), l)))

    @property
    def index(self) -> int:
        return abs(_det(self.cartan))

    @property
    def conductor_bound(self) -> int:
        return 2 * self.scaling * (self.level + self.dual_coxeter) * self.index


def _label(lam: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def kac_peterson(ld: LieDatum, check: bool = True) -> PremodularData:
    """Modular data of the level-k category attached to ``ld``."""
    kh = ld.level + ld.dual_coxeter
    rho = ld.rho
    weights = ld.weights
    shifted = [tuple(a + b for a, b in zip(lam, rho)) for lam in weights]
    twists = []
    for lam in weights:
        h = ld.ip(lam, tuple(a + 2 * b for a, b in zip(lam, rho))) / (2 * kh)
        t = RootOfUnity.from_fraction(h)
        if ld.conductor_bound % t.M:
            raise InternalInconsistency(f"twist order {t.M} does not divide {ld.conductor_bound}")
        twists.append(t)
    W = ld.weyl_group
    dets = [_det(w) for w in W]
    orbits = [[ld.act(w, v) for w in W] for v in shifted]
    exps = [[[-ld.ip(wv, mu) / kh for wv in orbits[a]] for mu in shifted] for a in range(len(weights))]
    L = lcm(*(e.denominator for row in exps for col in row for e in col))
    raw = []
    for row in exps:
        out_row = []
        for col in row:
            coeffs = [0] * L
            for sign, e in zip(dets, col):
                coeffs[int(e * L) % L] += sign
            out_row.append(CycloNum(L, coeffs))
        raw.append(out_row)
    inv00 = raw[0][0].inv()
    S = [[x * inv00 for x in row] for row in raw]
    data = PremodularData(
        labels=[_label(l) for l in weights],
        dims=[S[i][0] for i in range(len(weights))],
        twists=twists,
        s_matrix=S,
        name=f"C({ld.type},{ld.level})",
        provenance=f"kac_peterson({ld.type},{ld.level})",
        pseudounitary=True,
    )
    if check:
        diags = validate(data)
        if diags:
            raise InternalInconsistency(f"invalid modular data: {[str(d) for d in diags]}")
        if not is_modular(data):
            raise InternalInconsistency("S-matrix is singular")
        try:
            fusion = verlinde_fusion(data)
        except NonIntegralFusion as exc:
            raise InternalInconsistency(str(exc)) from exc
        if fusion.axiom_failures():
            raise InternalInconsistency("fusion axioms fail")
    return data
